#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "densemimo/config.hpp"
#include "densemimo/errors.hpp"
#include "densemimo/montecarlo.hpp"
#include "densemimo/report.hpp"

using namespace densemimo;
using montecarlo::NetworkConfig;
using montecarlo::SweepRecord;
using montecarlo::SweepResult;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("densemimo_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const fs::path& cwd) {
  const char* bin = std::getenv("DENSEMIMO_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "DENSEMIMO_CLI must point at the binary");
  const fs::path out = cwd / "stdout.txt";
  const fs::path err = cwd / "stderr.txt";
  const std::string cmd = "cd " + cwd.string() + " && " + std::string(bin) +
                          " " + args + " > " + out.string() + " 2> " +
                          err.string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = raw == -1 ? -1 : WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

SweepResult tiny_sweep(bool second_law) {
  SweepResult sweep;
  sweep.truncation_radius = 2.0;
  sweep.master_seed = 42;
  SweepRecord a;
  a.lambda = 1.0;
  a.n_t = 2;
  a.n_r = 1;
  a.trials = 100;
  a.censored = 3;
  a.sinr = {0.5, 0.125, 97};
  a.ase = {0.25, 0.0625, 97};
  a.norm_sinr = {0.25, 0.03125, 97};
  sweep.records.push_back(a);
  SweepRecord b = a;
  b.lambda = 10.0;
  b.sinr = {0.1 + 0.2, 1e-17, 97};  // deliberately awkward doubles
  if (second_law) {
    b.law_index = 1;
    b.n_t = 7;
  }
  sweep.records.push_back(b);
  return sweep;
}

}  // namespace

TEST_CASE("parse: empty document gives the defaults") {
  const auto cfg = config::parse("{}");
  CHECK(cfg.lambda_grid == montecarlo::default_lambda_grid());
  CHECK(cfg.window.size == 0.0);
  CHECK(std::holds_alternative<pathloss::StretchedExponential>(cfg.model.variant()));
  CHECK(cfg.mode == montecarlo::Mode::kMiso);
  CHECK(cfg.trials == 10000);
  CHECK(cfg.master_seed == 1);
  CHECK(cfg.noise_db == -70.0);
  CHECK(cfg.truncation_epsilon == 1e-3);
}

TEST_CASE("parse: full document") {
  const std::string text = R"({
    "network": {
      "lambda_grid": {"min": 1.0, "max": 100.0, "points": 5},
      "window": {"shape": "square", "size": 30.0},
      "noise_db": -60
    },
    "pathloss": {"variant": "bounded_single_slope", "l0": 2.0, "r_c": 1.5, "eta": 4.0},
    "antennas": {
      "mode": "mimo",
      "t_laws": [{"form": "power", "c": 1.0, "p": 1.0}],
      "r_law": {"form": "power", "c": 1.0, "p": 1.0}
    },
    "simulation": {"trials": 500, "master_seed": 9, "truncation_epsilon": 1e-4}
  })";
  const auto cfg = config::parse(text);
  REQUIRE(cfg.lambda_grid.size() == 5);
  CHECK(cfg.lambda_grid.front() == 1.0);
  CHECK(cfg.lambda_grid.back() == 100.0);
  CHECK(cfg.lambda_grid[1] == doctest::Approx(std::pow(10.0, 0.5)));
  CHECK(cfg.window.shape == geometry::Shape::kSquare);
  CHECK(cfg.window.size == 30.0);
  CHECK(cfg.noise_db == -60.0);
  const auto* bss = std::get_if<pathloss::BoundedSingleSlope>(&cfg.model.variant());
  REQUIRE(bss != nullptr);
  CHECK(bss->l0 == 2.0);
  CHECK(bss->r_c == 1.5);
  CHECK(cfg.mode == montecarlo::Mode::kMimo);
  REQUIRE(cfg.t_laws.size() == 1);
  CHECK(std::holds_alternative<channel::Power>(cfg.t_laws[0].form));
  CHECK(cfg.trials == 500);
  CHECK(cfg.master_seed == 9);
  CHECK(cfg.truncation_epsilon == 1e-4);
}

TEST_CASE("parse: rejects malformed inputs") {
  CHECK_THROWS_AS(config::parse("not json"), UsageError);
  CHECK_THROWS_AS(config::parse("[1,2]"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"netwrok": {}})"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"network": {"lambda": 3}})"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"pathloss": {"variant": "fancy"}})"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"pathloss": {"variant": "disc", "l0": "x"}})"),
                  UsageError);
  CHECK_THROWS_AS(config::parse(R"({"antennas": {"t_laws": []}})"), UsageError);
  CHECK_THROWS_AS(
      config::parse(R"({"antennas": {"t_laws": [{"form": "cubic"}]}})"),
      UsageError);
  CHECK_THROWS_AS(config::parse(R"({"simulation": {"trials": 2.5}})"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"simulation": {"trials": 0}})"), UsageError);
  CHECK_THROWS_AS(config::parse(R"({"network": {"window": {"shape": "disc"}}})"),
                  UsageError);
  CHECK_THROWS_AS(config::load("/no/such/config.json"), UsageError);
}

TEST_CASE("canonical form and digest are spelling-invariant") {
  const auto a = config::parse("{}");
  const auto b = config::parse(R"({
    "network": {"noise_db": -70.0},
    "pathloss": {"variant": "stretched_exp", "eta": 0.9, "kappa": 0.52},
    "simulation": {"trials": 10000, "master_seed": 1}
  })");
  CHECK(config::canonical(a) == config::canonical(b));
  CHECK(config::digest(a) == config::digest(b));
  CHECK(config::digest(a).size() == 16);
  CHECK(config::digest(a).find_first_not_of("0123456789abcdef") == std::string::npos);

  // Canonicalization is a fixed point.
  const auto c = config::parse(config::canonical(a));
  CHECK(config::canonical(c) == config::canonical(a));

  auto d = a;
  d.master_seed = 2;
  CHECK(config::digest(d) != config::digest(a));
}

TEST_CASE("csv: pinned schema and stable bytes") {
  const auto sweep = tiny_sweep(false);
  const auto csv = report::to_csv(sweep);
  const std::string expected =
      "lambda,n_t,n_r,mean_sinr,sinr_ci_lo,sinr_ci_hi,mean_ase,ase_ci_lo,"
      "ase_ci_hi,mean_norm_sinr,censored\n"
      "1,2,1,0.5,0.375,0.625,0.25,0.1875,0.3125,0.25,3\n"
      "10,2,1,0.30000000000000004,0.30000000000000004,0.30000000000000004,"
      "0.25,0.1875,0.3125,0.25,3\n";
  CHECK(csv == expected);

  // Multi-law sweeps get a trailing law column.
  const auto multi = report::to_csv(tiny_sweep(true));
  CHECK(multi.substr(0, multi.find('\n')) ==
        "lambda,n_t,n_r,mean_sinr,sinr_ci_lo,sinr_ci_hi,mean_ase,ase_ci_lo,"
        "ase_ci_hi,mean_norm_sinr,censored,law");
  CHECK(multi.find(",1\n") != std::string::npos);
}

TEST_CASE("json: exact round trip of the record block") {
  NetworkConfig cfg;
  cfg.lambda_grid = {1.0, 10.0};
  const auto sweep = tiny_sweep(true);
  const auto text = report::to_json(cfg, sweep);
  const auto back = report::sweep_from_json(text);
  REQUIRE(back.records.size() == sweep.records.size());
  CHECK(back.truncation_radius == sweep.truncation_radius);
  CHECK(back.master_seed == sweep.master_seed);
  for (std::size_t i = 0; i < sweep.records.size(); ++i) {
    CHECK(back.records[i].lambda == sweep.records[i].lambda);
    CHECK(back.records[i].n_t == sweep.records[i].n_t);
    CHECK(back.records[i].law_index == sweep.records[i].law_index);
    CHECK(back.records[i].censored == sweep.records[i].censored);
    CHECK(back.records[i].sinr.mean == sweep.records[i].sinr.mean);
    CHECK(back.records[i].sinr.half_width == sweep.records[i].sinr.half_width);
    CHECK(back.records[i].sinr.n == sweep.records[i].sinr.n);
    CHECK(back.records[i].ase.mean == sweep.records[i].ase.mean);
    CHECK(back.records[i].norm_sinr.half_width ==
          sweep.records[i].norm_sinr.half_width);
  }
  CHECK(report::json_digest(text) == config::digest(cfg));
  CHECK(text.find("\"rng_id\"") != std::string::npos);
  CHECK(text.find("xoshiro256pp-sm64kdf-v1") != std::string::npos);
  CHECK(text.find("\"asymptote\"") != std::string::npos);

  CHECK_THROWS_AS(report::sweep_from_json("{}"), UsageError);
  CHECK_THROWS_AS(report::sweep_from_json("nope"), UsageError);
}

TEST_CASE("svg: self-contained plot with asymptote and no timestamps") {
  NetworkConfig cfg;
  cfg.lambda_grid = {1.0, 10.0};
  const auto sweep = tiny_sweep(false);
  const auto svg = report::sinr_svg(cfg, sweep);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("asymptote") != std::string::npos);
  CHECK(svg.find("digest=" + config::digest(cfg)) != std::string::npos);
  CHECK(svg.find("timestamp") == std::string::npos);
  CHECK(report::sinr_svg(cfg, sweep) == svg);  // byte-stable
  const auto ase = report::ase_svg(cfg, sweep);
  CHECK(ase.find("ASE") != std::string::npos);
}

TEST_CASE("svg: four-law sweep renders four curve sets in one plot") {
  const auto cfg = config::parse(R"({
    "network": {"lambda_grid": [1.0, 10.0]},
    "antennas": {"t_laws": [{"form": "constant", "n": 1},
                            {"form": "power", "c": 1.0, "p": 0.5},
                            {"form": "power", "c": 1.0, "p": 1.0},
                            {"form": "power", "c": 1.0, "p": 1.5}]}
  })");
  REQUIRE(cfg.t_laws.size() == 4);
  SweepResult sweep;
  sweep.truncation_radius = 2.0;
  sweep.master_seed = 1;
  for (std::size_t law = 0; law < 4; ++law) {
    for (double lambda : {1.0, 10.0}) {
      SweepRecord r;
      r.lambda = lambda;
      r.law_index = static_cast<int>(law);
      r.n_t = channel::antennas_at(cfg.t_laws[law], lambda);
      r.n_r = 1;
      r.trials = 100;
      r.sinr = {0.5 / lambda * (1.0 + static_cast<double>(law)), 0.01, 100};
      r.ase = {0.25 * (1.0 + static_cast<double>(law)), 0.01, 100};
      r.norm_sinr = {0.1, 0.01, 100};
      sweep.records.push_back(r);
    }
  }
  const auto svg = report::ase_svg(cfg, sweep);
  std::size_t curves = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++curves;
  CHECK(curves >= 8);  // four data series plus their dashed asymptotes
  for (const auto& law : cfg.t_laws)
    CHECK(svg.find(law.describe()) != std::string::npos);
}

TEST_CASE("write_file failures carry IoError") {
  CHECK_THROWS_AS(report::write_file("/nonexistent_dir_zz/x.txt", "hi"), IoError);
  TempDir tmp;
  report::write_file((tmp.path / "a.txt").string(), "hello");
  CHECK(slurp(tmp.path / "a.txt") == "hello");
}

TEST_CASE("cli: validate") {
  TempDir tmp;
  report::write_file((tmp.path / "se.json").string(), "{}");
  auto ok = run_cli("validate se.json", tmp.path);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("feasible: yes") != std::string::npos);

  ok = run_cli("validate se.json --json", tmp.path);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"feasible\": true") != std::string::npos);

  // Singular power-law head: condition (i) fails, exit 1.
  report::write_file((tmp.path / "sing.json").string(), R"({
    "pathloss": {"variant": "tabulated", "r": [1.0, 2.0, 4.0],
                 "gain": [1.0, 0.0625, 0.00390625],
                 "head": "power_law", "tail": "power_law"}
  })");
  const auto bad = run_cli("validate sing.json", tmp.path);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("feasible: no") != std::string::npos);

  CHECK(run_cli("validate missing.json", tmp.path).code == 2);
  CHECK(run_cli("validate", tmp.path).code == 2);
  CHECK(run_cli("frobnicate se.json", tmp.path).code == 2);

  // JSON-only config surface: .toml is refused up front.
  report::write_file((tmp.path / "se.toml").string(), "[network]\n");
  const auto toml = run_cli("validate se.toml", tmp.path);
  CHECK(toml.code == 2);
  CHECK(toml.err.find("TOML") != std::string::npos);
}

TEST_CASE("cli: asymptote") {
  TempDir tmp;
  report::write_file((tmp.path / "disc.json").string(), R"({
    "pathloss": {"variant": "disc", "l0": 1.0, "radius": 1.0},
    "antennas": {"t_laws": [{"form": "power", "c": 1.0, "p": 1.0}]}
  })");
  const auto r = run_cli("asymptote disc.json", tmp.path);
  CHECK(r.code == 0);
  CHECK(r.out.find("gamma = 0.5") != std::string::npos);
  CHECK(r.out.find("0.31830") != std::string::npos);  // 1/pi
  CHECK(r.out.find("linear") != std::string::npos);
}

TEST_CASE("cli: sweep writes, caches, and reproduces byte-identical results") {
  TempDir tmp;
  report::write_file((tmp.path / "cfg.json").string(), R"({
    "network": {"lambda_grid": [2.0, 8.0]},
    "pathloss": {"variant": "disc", "l0": 1.0, "radius": 2.0},
    "antennas": {"t_laws": [{"form": "constant", "n": 2}]},
    "simulation": {"trials": 80, "master_seed": 4}
  })");
  const auto first = run_cli("sweep cfg.json --plot", tmp.path);
  CHECK(first.code == 0);
  CHECK(first.out.find("wrote") != std::string::npos);

  fs::path dir;
  for (const auto& e : fs::directory_iterator(tmp.path / "out"))
    dir = e.path();
  REQUIRE(fs::exists(dir / "sweep.csv"));
  REQUIRE(fs::exists(dir / "sweep.json"));
  REQUIRE(fs::exists(dir / "sinr.svg"));
  REQUIRE(fs::exists(dir / "ase.svg"));
  REQUIRE(fs::exists(dir / "manifest.json"));
  CHECK(slurp(dir / "manifest.json").find(dir.filename().string()) !=
        std::string::npos);
  const auto csv1 = slurp(dir / "sweep.csv");
  CHECK(csv1.rfind("lambda,n_t,n_r,", 0) == 0);

  // Second run is served from the cache.
  const auto second = run_cli("sweep cfg.json --plot", tmp.path);
  CHECK(second.code == 0);
  CHECK(second.out.find("cached") != std::string::npos);

  // Forced recompute reproduces the same bytes.
  const auto third = run_cli("sweep cfg.json --plot --force", tmp.path);
  CHECK(third.code == 0);
  CHECK(slurp(dir / "sweep.csv") == csv1);

  // Manifest timestamp stays null unless opted in.
  CHECK(slurp(dir / "manifest.json").find("\"timestamp\": null") !=
        std::string::npos);

  // Debug dump appears behind the flag (the cached sweep is reused) and
  // matches the library emitter byte for byte.
  const auto dumped =
      run_cli("sweep cfg.json --plot --dump-realizations", tmp.path);
  CHECK(dumped.code == 0);
  REQUIRE(fs::exists(dir / "realizations.csv"));
  const auto dump = slurp(dir / "realizations.csv");
  CHECK(dump.rfind("trial,distance,angle\n", 0) == 0);
  const NetworkConfig cfg = config::load((tmp.path / "cfg.json").string());
  CHECK(dump == report::realizations_csv(cfg, 8));

  // Rows: distances ascending within a trial and bounded by the disc
  // support, angles in [0, 2pi).
  std::istringstream rows(dump);
  std::string line;
  std::getline(rows, line);
  double prev_trial = -1.0;
  double prev_dist = 0.0;
  int n_rows = 0;
  while (std::getline(rows, line)) {
    double t = 0.0, d = 0.0, a = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &d, &a) == 3);
    if (t != prev_trial) {
      prev_trial = t;
      prev_dist = 0.0;
    }
    CHECK(d >= prev_dist);
    prev_dist = d;
    CHECK(d <= 2.0);
    CHECK(a >= 0.0);
    CHECK(a < 6.2832);
    ++n_rows;
  }
  CHECK(n_rows > 50);  // lambda=2 on a radius-2 disc: ~25 points x 8 trials

  // JSON-only format emits no CSV.
  report::write_file((tmp.path / "cfg2.json").string(), R"({
    "network": {"lambda_grid": [2.0, 8.0]},
    "pathloss": {"variant": "disc", "l0": 1.0, "radius": 2.0},
    "antennas": {"t_laws": [{"form": "constant", "n": 2}]},
    "simulation": {"trials": 80, "master_seed": 5}
  })");
  const auto jr = run_cli("sweep cfg2.json --format json --out out2", tmp.path);
  CHECK(jr.code == 0);
  fs::path dir2;
  for (const auto& e : fs::directory_iterator(tmp.path / "out2"))
    dir2 = e.path();
  CHECK(fs::exists(dir2 / "sweep.json"));
  CHECK_FALSE(fs::exists(dir2 / "sweep.csv"));

  // Opting in stamps the manifest with a wall-clock ISO time.
  const auto ts =
      run_cli("sweep cfg2.json --format json --out out3 --timestamps",
              tmp.path);
  CHECK(ts.code == 0);
  fs::path dir3;
  for (const auto& e : fs::directory_iterator(tmp.path / "out3"))
    dir3 = e.path();
  CHECK(slurp(dir3 / "manifest.json").find("\"timestamp\": \"2") !=
        std::string::npos);

  CHECK(run_cli("sweep cfg.json --format yaml", tmp.path).code == 2);
}

TEST_CASE("cli: verify lemma1 passes on a disc model") {
  TempDir tmp;
  report::write_file((tmp.path / "cfg.json").string(), R"({
    "network": {"lambda_grid": [50.0, 200.0]},
    "pathloss": {"variant": "disc", "l0": 1.0, "radius": 1.0},
    "simulation": {"trials": 200, "master_seed": 7}
  })");
  const auto r = run_cli("verify cfg.json --experiment lemma1", tmp.path);
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] lemma1.top_gap") != std::string::npos);
  CHECK(r.out.find("experiment lemma1: PASS") != std::string::npos);

  const auto bad = run_cli("verify cfg.json --experiment theoremX", tmp.path);
  CHECK(bad.code == 2);
}
