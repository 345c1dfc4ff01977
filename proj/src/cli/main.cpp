#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "densemimo/asymptotics.hpp"
#include "densemimo/config.hpp"
#include "densemimo/errors.hpp"
#include "densemimo/montecarlo.hpp"
#include "densemimo/pathloss.hpp"
#include "densemimo/report.hpp"
#include "densemimo/version.hpp"

namespace {

using densemimo::IoError;
using densemimo::UsageError;
using densemimo::montecarlo::NetworkConfig;
using densemimo::montecarlo::SweepResult;
using nlohmann::json;
namespace config = densemimo::config;
namespace report = densemimo::report;
namespace mc = densemimo::montecarlo;
namespace pathloss = densemimo::pathloss;
namespace asymptotics = densemimo::asymptotics;
namespace fs = std::filesystem;

// Progress ticker on stderr; stdout stays machine-readable.
mc::Progress stderr_progress(const std::string& label) {
  return [label](std::size_t lambda_index, int done, int total) {
    std::fprintf(stderr, "\r%s: grid point %zu, trial %d/%d    ", label.c_str(),
                 lambda_index + 1, done, total);
    if (done >= total) std::fprintf(stderr, "\n");
    std::fflush(stderr);
  };
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* status_name(pathloss::CheckStatus s) {
  switch (s) {
    case pathloss::CheckStatus::kPass: return "pass";
    case pathloss::CheckStatus::kFail: return "fail";
    default: return "not_checked";
  }
}

int cmd_validate(const std::string& path, bool as_json) {
  const NetworkConfig cfg = config::load(path);
  const auto rep = pathloss::validate_feasibility(cfg.model);
  if (as_json) {
    json j;
    j["digest"] = config::digest(cfg);
    j["model"] = cfg.model.describe();
    j["feasible"] = rep.feasible();
    j["condition_i"] = rep.condition_i;
    j["l0"] = rep.l0;
    j["condition_ii"] = rep.condition_ii;
    if (rep.worst_violating_r) j["worst_violating_r"] = *rep.worst_violating_r;
    j["condition_iii"] = rep.condition_iii;
    if (rep.gamma) j["gamma"] = *rep.gamma;
    if (!rep.condition_iii_note.empty()) j["condition_iii_note"] = rep.condition_iii_note;
    j["assumption1"] = {{"cond1", status_name(rep.assumption1_cond1)},
                        {"cond2", status_name(rep.assumption1_cond2)},
                        {"cond3", status_name(rep.assumption1_cond3)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model: " << cfg.model.describe() << "\n";
    std::cout << "condition (i)   L(0) finite and positive: "
              << (rep.condition_i ? "pass" : "FAIL") << " (L0 = " << rep.l0
              << ")\n";
    std::cout << "condition (ii)  L(r) <= L(0) everywhere:   "
              << (rep.condition_ii ? "pass" : "FAIL");
    if (rep.worst_violating_r)
      std::cout << " (violated at r = " << *rep.worst_violating_r << ")";
    std::cout << "\n";
    std::cout << "condition (iii) gamma finite and positive: "
              << (rep.condition_iii ? "pass" : "FAIL");
    if (rep.gamma) std::cout << " (gamma = " << *rep.gamma << ")";
    if (!rep.condition_iii_note.empty())
      std::cout << " [" << rep.condition_iii_note << "]";
    std::cout << "\n";
    std::cout << "assumption 1 (self-witness): cond1 "
              << status_name(rep.assumption1_cond1) << ", cond2 "
              << status_name(rep.assumption1_cond2) << ", cond3 "
              << status_name(rep.assumption1_cond3) << "\n";
    std::cout << "feasible: " << (rep.feasible() ? "yes" : "no") << "\n";
  }
  return rep.feasible() ? 0 : 1;
}

const char* regime_name(densemimo::channel::Regime r) {
  switch (r) {
    case densemimo::channel::Regime::kSublinear: return "sublinear";
    case densemimo::channel::Regime::kLinear: return "linear";
    default: return "superlinear";
  }
}

int cmd_asymptote(const std::string& path) {
  const NetworkConfig cfg = config::load(path);
  const double l0 = pathloss::evaluate(cfg.model, 0.0);
  const double gamma = pathloss::gamma_integral(cfg.model);
  const double limit = asymptotics::miso_sinr_limit(cfg.model);
  std::cout << std::setprecision(12);
  std::cout << "model: " << cfg.model.describe() << "\n";
  std::cout << "L0 = " << l0 << "\n";
  std::cout << "gamma = " << gamma << "\n";
  std::cout << "L0 / (2 pi gamma) = " << limit << "\n";
  for (std::size_t i = 0; i < cfg.t_laws.size(); ++i) {
    const auto& law = cfg.t_laws[i];
    const auto cls = densemimo::channel::classify_scaling(law);
    const auto pred = asymptotics::ase_regime(law);
    std::cout << "law " << i << ": " << law.describe() << " -> "
              << regime_name(cls.regime);
    if (cls.regime == densemimo::channel::Regime::kLinear)
      std::cout << ", c = " << cls.c;
    std::cout << ", ASE scale " << pred.scale.describe();
    if (cfg.mode == mc::Mode::kMimo) {
      try {
        const double y = asymptotics::y_ratio(law, cfg.r_law);
        const double f = (1.0 + std::sqrt(y)) * (1.0 + std::sqrt(y));
        std::cout << ", mimo factor (1+sqrt(y))^2 = " << f << " (y = " << y
                  << ")";
      } catch (const densemimo::DomainError&) {
        std::cout << ", mimo factor undefined for this law pair";
      }
    }
    std::cout << "\n";
  }
  return 0;
}

struct SweepIo {
  std::string out_root = "out";
  bool force = false;

  fs::path dir_for(const NetworkConfig& cfg) const {
    return fs::path(out_root) / config::digest(cfg);
  }

  // Cached sweep if the result document is already on disk.
  std::optional<SweepResult> cached(const NetworkConfig& cfg) const {
    if (force) return std::nullopt;
    const fs::path doc = dir_for(cfg) / "sweep.json";
    std::error_code ec;
    if (!fs::exists(doc, ec)) return std::nullopt;
    return report::sweep_from_json(read_file(doc.string()));
  }

  SweepResult run(const NetworkConfig& cfg, const std::string& label) const {
    if (auto hit = cached(cfg)) {
      std::fprintf(stderr, "%s: reusing %s\n", label.c_str(),
                   (dir_for(cfg) / "sweep.json").string().c_str());
      return *hit;
    }
    const SweepResult sweep = mc::estimate(cfg, stderr_progress(label));
    report::ensure_dir(dir_for(cfg).string());
    report::write_file((dir_for(cfg) / "sweep.json").string(),
                       report::to_json(cfg, sweep));
    return sweep;
  }
};

// Manifest timestamps are opt-in so reruns stay byte-identical by default.
std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Realization dump is a debug aid; cap the trial count so the file stays
// inspectable even under dense default configs.
constexpr int kDumpTrials = 8;

int cmd_sweep(const std::string& path, const SweepIo& io,
              const std::string& format, bool plot, bool dump_realizations,
              bool timestamps) {
  const NetworkConfig cfg = config::load(path);
  if (format != "csv" && format != "json" && format != "both")
    throw UsageError("--format must be csv, json, or both");
  const fs::path dir = io.dir_for(cfg);

  std::vector<std::string> wanted;
  if (format != "json") wanted.push_back("sweep.csv");
  if (format != "csv") wanted.push_back("sweep.json");
  if (plot) {
    wanted.push_back("sinr.svg");
    wanted.push_back("ase.svg");
  }
  if (dump_realizations) wanted.push_back("realizations.csv");
  bool all_present = !io.force;
  for (const auto& name : wanted) {
    std::error_code ec;
    all_present = all_present && fs::exists(dir / name, ec);
  }
  if (all_present) {
    std::cout << "cached: " << dir.string() << "\n";
    return 0;
  }

  SweepResult sweep;
  if (auto hit = io.cached(cfg)) {
    sweep = *hit;
    std::fprintf(stderr, "sweep: reusing %s\n",
                 (dir / "sweep.json").string().c_str());
  } else {
    sweep = mc::estimate(cfg, stderr_progress("sweep"));
  }
  for (const auto& w : sweep.warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());

  report::ensure_dir(dir.string());
  std::vector<std::string> outputs;
  if (format != "json") {
    report::write_file((dir / "sweep.csv").string(), report::to_csv(sweep));
    outputs.push_back("sweep.csv");
  }
  if (format != "csv") {
    report::write_file((dir / "sweep.json").string(),
                       report::to_json(cfg, sweep));
    outputs.push_back("sweep.json");
  }
  if (plot) {
    report::write_file((dir / "sinr.svg").string(),
                       report::sinr_svg(cfg, sweep));
    report::write_file((dir / "ase.svg").string(), report::ase_svg(cfg, sweep));
    outputs.push_back("sinr.svg");
    outputs.push_back("ase.svg");
  }
  if (dump_realizations) {
    report::write_file((dir / "realizations.csv").string(),
                       report::realizations_csv(cfg, kDumpTrials));
    outputs.push_back("realizations.csv");
  }
  report::write_file((dir / "manifest.json").string(),
                     report::manifest_json(cfg, outputs,
                                           timestamps ? iso_now() : ""));
  for (const auto& name : outputs)
    std::cout << "wrote " << (dir / name).string() << "\n";
  return 0;
}

int cmd_verify(const std::string& path, const std::string& experiment,
               const SweepIo& io, bool as_json) {
  const NetworkConfig cfg = config::load(path);
  const auto runner = [&io](const NetworkConfig& c) {
    return io.run(c, "verify sweep");
  };
  const auto rep = mc::verify_experiment(experiment, cfg, runner,
                                         stderr_progress("verify sweep"));
  if (as_json) {
    json j;
    j["experiment"] = rep.experiment;
    j["pass"] = rep.pass;
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      cj["observed"] = c.observed;
      cj["lo"] = c.lo;
      cj["hi"] = c.hi;
      if (!c.detail.empty()) cj["detail"] = c.detail;
      checks.push_back(cj);
    }
    j["checks"] = checks;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                << ": observed " << c.observed << ", bounds [" << c.lo << ", "
                << c.hi << "]";
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << "experiment " << rep.experiment << ": "
              << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense multi-antenna network simulator and asymptotic toolkit"};
  app.set_version_flag("--version", densemimo::kCodeVersion);
  app.require_subcommand(1);

  std::string cfg_path;
  std::string out_root = "out";
  std::string format = "both";
  std::string experiment;
  bool as_json = false;
  bool plot = false;
  bool force = false;
  bool dump_realizations = false;
  bool timestamps = false;

  auto* validate = app.add_subcommand(
      "validate", "check path-loss feasibility conditions (i)-(iii)");
  validate->add_option("config", cfg_path, "JSON config file")->required();
  validate->add_flag("--json", as_json, "machine-readable report");

  auto* sweep = app.add_subcommand(
      "sweep", "Monte Carlo density sweep; writes CSV/JSON (and SVG) results");
  sweep->add_option("config", cfg_path, "JSON config file")->required();
  sweep->add_option("--out", out_root, "output root directory");
  sweep->add_option("--format", format, "csv, json, or both");
  sweep->add_flag("--plot", plot, "emit sinr.svg and ase.svg");
  sweep->add_flag("--force", force, "recompute even when cached");
  sweep->add_flag("--dump-realizations", dump_realizations,
                  "debug: dump trial,distance,angle rows for the first "
                  "grid density (first 8 trials)");
  sweep->add_flag("--timestamps", timestamps,
                  "stamp manifest.json with the wall-clock time");

  auto* verify = app.add_subcommand(
      "verify", "run an experiment and compare against asymptotic targets");
  verify->add_option("config", cfg_path, "JSON config file")->required();
  verify
      ->add_option("--experiment", experiment,
                   "lemma1, theorem1, theorem2, corollary1, corollary2, "
                   "or conjecture")
      ->required();
  verify->add_flag("--json", as_json, "machine-readable report");
  verify->add_option("--out", out_root, "sweep cache root");
  verify->add_flag("--force", force, "ignore cached sweeps");

  auto* asym = app.add_subcommand(
      "asymptote", "print the asymptotic constants for a config");
  asym->add_option("config", cfg_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
    const SweepIo io{out_root, force};
    if (validate->parsed()) return cmd_validate(cfg_path, as_json);
    if (sweep->parsed())
      return cmd_sweep(cfg_path, io, format, plot, dump_realizations,
                       timestamps);
    if (verify->parsed()) return cmd_verify(cfg_path, experiment, io, as_json);
    if (asym->parsed()) return cmd_asymptote(cfg_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
