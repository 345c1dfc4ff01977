#pragma once

#include <string>
#include <vector>

#include "densemimo/montecarlo.hpp"

namespace densemimo::report {

// CSV with the stable schema
//   lambda,n_t,n_r,mean_sinr,sinr_ci_lo,sinr_ci_hi,mean_ase,ase_ci_lo,
//   ase_ci_hi,mean_norm_sinr,censored
// plus a trailing `law` column when the sweep holds more than one law.
// Doubles are shortest round-trip, so equal results give equal bytes.
std::string to_csv(const montecarlo::SweepResult& sweep);

// Records plus provenance: config echo, digest, rng id, schema/code version,
// and the asymptote targets the curves are heading for.
std::string to_json(const montecarlo::NetworkConfig& config,
                    const montecarlo::SweepResult& sweep);

// Inverse of to_json's record block; exact double round-trip. Used to reload
// cached sweeps. Raises UsageError on schema mismatch.
montecarlo::SweepResult sweep_from_json(const std::string& text);
// Digest recorded in a sweep document ("" when absent).
std::string json_digest(const std::string& text);

// Minimal self-contained plots: per-law polylines on log axes with dashed
// asymptote references. No timestamps, no external dependencies.
std::string sinr_svg(const montecarlo::NetworkConfig& config,
                     const montecarlo::SweepResult& sweep);
std::string ase_svg(const montecarlo::NetworkConfig& config,
                    const montecarlo::SweepResult& sweep);

// `timestamp` empty -> null field, keeping re-runs byte-identical; the CLI
// fills it only behind --timestamps.
std::string manifest_json(const montecarlo::NetworkConfig& config,
                          const std::vector<std::string>& outputs,
                          const std::string& timestamp = "");

// Debug dump: the geometry of the first grid density's first `trials`
// trials (columns trial,distance,angle), reproduced from the same per-trial
// substreams the engine consumes.
std::string realizations_csv(const montecarlo::NetworkConfig& config,
                             int trials);

// Both raise IoError, carrying the path.
void write_file(const std::string& path, const std::string& content);
void ensure_dir(const std::string& path);

}  // namespace densemimo::report
