#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "densemimo/channel.hpp"
#include "densemimo/geometry.hpp"
#include "densemimo/metrics.hpp"
#include "densemimo/pathloss.hpp"
#include "densemimo/stats.hpp"

namespace densemimo::montecarlo {

enum class Mode { kMiso, kMimo };

struct NetworkConfig {
  std::vector<double> lambda_grid;  // strictly increasing, positive
  // size 0 requests auto-sizing from the truncation radius.
  geometry::Window window{geometry::Shape::kDisc, 0.0};
  pathloss::PathLossModel model{pathloss::StretchedExponential{0.9, 0.52}};
  std::vector<channel::AntennaScalingLaw> t_laws{
      channel::AntennaScalingLaw::constant(1)};
  channel::AntennaScalingLaw r_law = channel::AntennaScalingLaw::constant(1);
  Mode mode = Mode::kMiso;
  double noise_db = -70.0;  // relative to unit transmit power
  int trials = 10000;
  std::uint64_t master_seed = 1;
  double truncation_epsilon = 1e-3;
};

// 8 points log-spaced over [1, 10^3].
std::vector<double> default_lambda_grid();

// The window actually simulated: when the configured window contains the
// truncation disc, interference beyond the truncation radius is within the
// epsilon budget and the disc is simulated instead (fast streaming path);
// a smaller configured window is honored as-is.
struct EffectiveWindow {
  geometry::Window window;
  double truncation_radius = 0.0;
  bool truncated = false;  // configured window replaced by the disc
};
EffectiveWindow effective_window(const NetworkConfig& config);

// Trial substreams derive from (master_seed, lambda index, trial index,
// purpose, law index); any trial is reproducible in isolation.
metrics::TrialResult run_trial(const NetworkConfig& config,
                               std::size_t lambda_index, int trial_index);
std::vector<metrics::TrialResult> run_trial_all(const NetworkConfig& config,
                                                std::size_t lambda_index,
                                                int trial_index);

struct SweepRecord {
  double lambda = 0.0;
  int n_t = 1;
  int n_r = 1;
  int law_index = 0;
  stats::MeanCi sinr;
  stats::MeanCi ase;
  stats::MeanCi norm_sinr;
  int censored = 0;
  int trials = 0;
};

struct SweepResult {
  // Law-major: each law's curve is contiguous, lambda ascending within it.
  std::vector<SweepRecord> records;
  std::vector<std::string> warnings;
  double truncation_radius = 0.0;
  std::uint64_t master_seed = 0;
};

// May be invoked from a worker thread; keep it cheap and thread-safe.
using Progress =
    std::function<void(std::size_t lambda_index, int done, int total)>;

// DENSEMIMO_WORKERS override, else hardware concurrency.
int worker_count();

// Trials run in parallel but reduce in trial-index order, so the result is a
// pure function of (config, master_seed) independent of worker count.
SweepResult estimate(const NetworkConfig& config,
                     const Progress& progress = {});

struct Lemma1Point {
  double lambda = 0.0;
  double mean = 0.0;      // mean of (1/lambda) sum L(r_i) g_i
  double ci_half = 0.0;
  double target = 0.0;    // 2*pi*gamma
  double rel_gap = 0.0;   // |mean - target| / target
};
std::vector<Lemma1Point> verify_lemma1(const pathloss::PathLossModel& model,
                                       const std::vector<double>& lambda_grid,
                                       int trials, int exclude_n,
                                       std::uint64_t master_seed);

using SweepRunner = std::function<SweepResult(const NetworkConfig&)>;

struct ConjectureReport {
  double flat_ratio = 0.0;         // max/min mean SINR over the top decade
  double ase_decade_ratio = 0.0;   // mean ASE at top / at top/10
  bool upper_trend_rejected = false;
  SweepResult sweep;
};
ConjectureReport conjecture_experiment(const NetworkConfig& config,
                                       const SweepRunner& run = {});

// Tolerances shared by `verify` and the acceptance gate.
namespace tol {
inline constexpr double kGammaRelErr = 1e-8;
inline constexpr double kServingKs = 0.01;
inline constexpr double kLemma1TopGap = 0.05;
inline constexpr double kTheorem1Norm = 0.10;
inline constexpr double kLinearDecadeLo = 8.0;
inline constexpr double kLinearDecadeHi = 12.0;
inline constexpr double kConstantDecadeMax = 3.0;
inline constexpr double kCorollary1Norm = 0.15;
inline constexpr double kMpBandLo = 3.7;
inline constexpr double kMpBandHi = 4.05;
inline constexpr double kConjectureFlatMax = 2.0;
inline constexpr double kConjectureAseSlack = 0.25;
inline constexpr double kEigRelErr = 1e-8;
}  // namespace tol

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double lo = 0.0;  // acceptance interval [lo, hi]
  double hi = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::string experiment;
  bool pass = false;
  std::vector<VerifyCheck> checks;
};

// Experiments: lemma1, theorem1, theorem2, corollary1, corollary2,
// conjecture. Sweeps are obtained through `run` (defaults to estimate), so
// callers can layer caching without touching the engine. Laws, grids and
// trial counts follow the acceptance criteria; the config supplies model,
// noise, seed, grid and the trial budget cap.
VerifyReport verify_experiment(const std::string& experiment,
                               const NetworkConfig& config,
                               const SweepRunner& run = {},
                               const Progress& progress = {});

}  // namespace densemimo::montecarlo
