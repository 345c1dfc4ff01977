#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "densemimo/asymptotics.hpp"
#include "densemimo/channel.hpp"
#include "densemimo/config.hpp"
#include "densemimo/errors.hpp"
#include "densemimo/geometry.hpp"
#include "densemimo/montecarlo.hpp"
#include "densemimo/pathloss.hpp"
#include "densemimo/report.hpp"
#include "densemimo/rng.hpp"
#include "densemimo/version.hpp"

#include <json.hpp>

namespace py = pybind11;
using namespace densemimo;
using nlohmann::json;
using montecarlo::NetworkConfig;

namespace {

// The module speaks JSON strings; the Python package converts dicts at the
// boundary. One parser, one schema, shared with the CLI.
NetworkConfig cfg_from(const std::string& text) { return config::parse(text); }

std::string validate_json(const std::string& text) {
  const NetworkConfig cfg = cfg_from(text);
  const auto rep = pathloss::validate_feasibility(cfg.model);
  const auto status = [](pathloss::CheckStatus s) {
    switch (s) {
      case pathloss::CheckStatus::kPass: return "pass";
      case pathloss::CheckStatus::kFail: return "fail";
      default: return "not_checked";
    }
  };
  json j;
  j["digest"] = config::digest(cfg);
  j["model"] = cfg.model.describe();
  j["feasible"] = rep.feasible();
  j["condition_i"] = rep.condition_i;
  j["l0"] = rep.l0;
  j["condition_ii"] = rep.condition_ii;
  j["condition_iii"] = rep.condition_iii;
  if (rep.gamma) j["gamma"] = *rep.gamma;
  if (!rep.condition_iii_note.empty()) j["condition_iii_note"] = rep.condition_iii_note;
  j["assumption1"] = {{"cond1", status(rep.assumption1_cond1)},
                      {"cond2", status(rep.assumption1_cond2)},
                      {"cond3", status(rep.assumption1_cond3)}};
  return j.dump();
}

std::string asymptote_json(const std::string& text) {
  const NetworkConfig cfg = cfg_from(text);
  json j;
  j["l0"] = pathloss::evaluate(cfg.model, 0.0);
  j["gamma"] = pathloss::gamma_integral(cfg.model);
  j["miso_sinr_limit"] = asymptotics::miso_sinr_limit(cfg.model);
  json laws = json::array();
  for (const auto& law : cfg.t_laws) {
    const auto cls = channel::classify_scaling(law);
    const auto pred = asymptotics::ase_regime(law);
    json l;
    l["law"] = law.describe();
    l["regime"] = cls.regime == channel::Regime::kSublinear
                      ? "sublinear"
                      : (cls.regime == channel::Regime::kLinear ? "linear"
                                                                : "superlinear");
    if (cls.regime == channel::Regime::kLinear) l["c"] = cls.c;
    l["ase_scale"] = pred.scale.describe();
    laws.push_back(l);
  }
  j["laws"] = laws;
  return j.dump();
}

std::string trial_json(const std::string& text, std::size_t lambda_index,
                       int trial_index) {
  const NetworkConfig cfg = cfg_from(text);
  const auto tr = montecarlo::run_trial(cfg, lambda_index, trial_index);
  json j;
  j["lambda"] = tr.lambda;
  j["n_t"] = tr.n_t;
  j["n_r"] = tr.n_r;
  j["censored"] = tr.censored;
  j["r0"] = tr.r0;
  j["serving_gain"] = tr.serving_gain;
  j["interference"] = tr.interference;
  j["noise"] = tr.noise;
  j["sinr"] = tr.sinr;
  j["ase"] = tr.ase;
  j["normalized_sinr"] = tr.normalized_sinr;
  return j.dump();
}

std::string verify_json(const std::string& experiment, const std::string& text) {
  const NetworkConfig cfg = cfg_from(text);
  const auto rep = montecarlo::verify_experiment(experiment, cfg);
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
  return j.dump();
}

std::vector<double> miso_gains(int n_t, std::size_t count, std::uint64_t seed) {
  auto stream = rng::derive(seed, {static_cast<std::uint64_t>(n_t), 1});
  std::vector<double> out(count);
  for (auto& v : out) v = channel::sample_miso_gain(n_t, stream);
  return out;
}

std::vector<double> mimo_eigs(int n_t, int n_r, std::size_t count,
                              std::uint64_t seed) {
  auto stream = rng::derive(seed, {static_cast<std::uint64_t>(n_t),
                                   static_cast<std::uint64_t>(n_r), 2});
  std::vector<double> out(count);
  for (auto& v : out) v = channel::sample_mimo_max_eig(n_t, n_r, stream);
  return out;
}

std::vector<double> serving_distances(double lambda, std::size_t count,
                                      std::uint64_t seed) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  auto stream = rng::derive(seed, {3});
  const geometry::Window window{geometry::Shape::kDisc,
                                std::sqrt(18.0 / lambda) + 1.0};
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto real = geometry::sample_ppp(lambda, window, stream);
    if (!real.empty()) out.push_back(real.distance[0]);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dense multi-antenna network Monte Carlo core";
  m.attr("__version__") = kCodeVersion;
  m.attr("rng_id") = kRngId;

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("canonical", [](const std::string& s) { return config::canonical(cfg_from(s)); },
        py::arg("config_json"), "Canonical JSON form of a config document");
  m.def("digest", [](const std::string& s) { return config::digest(cfg_from(s)); },
        py::arg("config_json"), "16-hex-char digest of the canonical config");
  m.def("validate", &validate_json, py::arg("config_json"),
        "Feasibility report for the configured path-loss model (JSON)");
  m.def("asymptote", &asymptote_json, py::arg("config_json"),
        "Asymptotic constants and per-law regimes (JSON)");

  m.def("evaluate",
        [](const std::string& s, double r) {
          return pathloss::evaluate(cfg_from(s).model, r);
        },
        py::arg("config_json"), py::arg("r"), "Path-loss gain L(r)");
  m.def("gamma_integral",
        [](const std::string& s) { return pathloss::gamma_integral(cfg_from(s).model); },
        py::arg("config_json"), "gamma = int_0^inf r L(r) dr");
  m.def("truncation_radius",
        [](const std::string& s, double lambda, double eps) {
          return geometry::truncation_radius(cfg_from(s).model, lambda, eps);
        },
        py::arg("config_json"), py::arg("lambda_"), py::arg("epsilon") = 1e-3,
        "Radius with relative interference tail below epsilon");
  m.def("miso_sinr_limit",
        [](const std::string& s) { return asymptotics::miso_sinr_limit(cfg_from(s).model); },
        py::arg("config_json"), "L0 / (2 pi gamma)");
  m.def("mimo_sinr_limit",
        [](const std::string& s, double y) {
          return asymptotics::mimo_sinr_limit(cfg_from(s).model, y);
        },
        py::arg("config_json"), py::arg("y"), "(1+sqrt(y))^2 L0 / (2 pi gamma)");

  m.def("antennas_at",
        [](const std::string& s, double lambda) {
          const auto cfg = cfg_from(s);
          return channel::antennas_at(cfg.t_laws.at(0), lambda);
        },
        py::arg("config_json"), py::arg("lambda_"),
        "N_t(lambda) for the first configured law");

  m.def("sample_miso_gain", &miso_gains, py::arg("n_t"), py::arg("count"),
        py::arg("seed") = 1, "Gamma(n_t, 1) MRT gains");
  m.def("sample_mimo_max_eig", &mimo_eigs, py::arg("n_t"), py::arg("n_r"),
        py::arg("count"), py::arg("seed") = 1,
        "Largest eigenvalues of H H^*");
  m.def("sample_serving_distance", &serving_distances, py::arg("lambda_"),
        py::arg("count"), py::arg("seed") = 1,
        "Nearest-point distances of a PPP of the given intensity");

  m.def("estimate",
        [](const std::string& s) {
          const NetworkConfig cfg = cfg_from(s);
          const auto sweep = [&] {
            py::gil_scoped_release release;
            return montecarlo::estimate(cfg);
          }();
          return report::to_json(cfg, sweep);
        },
        py::arg("config_json"),
        "Run the Monte Carlo sweep; returns the sweep document (JSON)");
  m.def("sweep_csv",
        [](const std::string& s) {
          const NetworkConfig cfg = cfg_from(s);
          const auto sweep = [&] {
            py::gil_scoped_release release;
            return montecarlo::estimate(cfg);
          }();
          return report::to_csv(sweep);
        },
        py::arg("config_json"), "Run the sweep and render the CSV table");
  m.def("realizations_csv",
        [](const std::string& s, int trials) {
          return report::realizations_csv(cfg_from(s), trials);
        },
        py::arg("config_json"), py::arg("trials") = 8,
        "Debug dump of the first grid density's geometry (CSV)");
  m.def("run_trial", &trial_json, py::arg("config_json"),
        py::arg("lambda_index"), py::arg("trial_index"),
        "Re-run one trial in isolation (JSON result)");
  m.def("verify",
        [](const std::string& experiment, const std::string& s) {
          py::gil_scoped_release release;
          return verify_json(experiment, s);
        },
        py::arg("experiment"), py::arg("config_json"),
        "Run a verification experiment (JSON report)");
}
