#pragma once

#include <string>

#include "densemimo/montecarlo.hpp"

namespace densemimo::config {

// JSON document with sections `network`, `pathloss`, `antennas`,
// `simulation`; every field optional with the NetworkConfig defaults.
// Unknown sections or keys, wrong types, and malformed documents raise
// UsageError with the offending key in the message.
montecarlo::NetworkConfig parse(const std::string& text);

// Reads and parses a config file; unreadable path raises UsageError.
montecarlo::NetworkConfig load(const std::string& path);

// Canonical serialization: all fields explicit, keys sorted, shortest
// round-trip floats. Two configs that parse to the same NetworkConfig
// canonicalize to the same bytes regardless of input spelling.
std::string canonical(const montecarlo::NetworkConfig& config);

// FNV-1a 64-bit hash of the canonical form, 16 lowercase hex chars.
// Recorded in every output file; keys the out/<digest>/ result cache.
std::string digest(const montecarlo::NetworkConfig& config);

}  // namespace densemimo::config
