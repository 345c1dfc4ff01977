#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>

namespace densemimo::rng {

// xoshiro256++ stream with SplitMix64 key derivation (id "xoshiro256pp-sm64kdf-v1").
// Substreams are derived, not jumped: derive(master, {k...}) absorbs each key
// into a SplitMix64 state whose successive outputs seed the xoshiro state, so
// any (seed, lambda index, trial index, purpose, law index) stream is
// reconstructible in isolation.
//
// Pinned transforms (identical across all call sites):
//   uniform:  (u64 >> 11) * 2^-53, in [0, 1)
//   Exp(1):   -log(1 - u)
//   normal:   Box-Muller, z = sqrt(-2 ln(1-u)) cos(2 pi v)  (one normal per pair)
//   CN(0,1):  re = r cos(2 pi v), im = r sin(2 pi v), r = sqrt(-ln(1-u))
//   Gamma(a): Marsaglia-Tsang, integer a >= 1
//   Poisson:  Knuth inversion for mean < 10, Hormann PTRS otherwise
class Stream {
 public:
  Stream() : s_{1, 2, 3, 4} {}
  explicit Stream(uint64_t s0, uint64_t s1, uint64_t s2, uint64_t s3)
      : s_{s0, s1, s2, s3} {}

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double exp1();
  double normal();                         // N(0, 1)
  std::pair<double, double> cnormal();     // CN(0,1): (re, im), each N(0, 1/2)
  double gamma_int_shape(int a);           // Gamma(a, 1), a >= 1
  long poisson(double mean);

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Purposes keying per-trial substreams; law-dependent draws absorb a law index.
enum class Purpose : uint64_t {
  kGeometry = 1,
  kAngles = 2,
  kInterferenceGains = 3,
  kServingChannel = 4,
  kResampleGeometry = 5,
  kResampleAngles = 6,
  kResampleInterference = 7,
  kDiagnostics = 8,
};

uint64_t splitmix64_next(uint64_t& state);
Stream derive(uint64_t master_seed, std::initializer_list<uint64_t> keys);
Stream trial_stream(uint64_t master_seed, uint64_t lambda_index,
                    uint64_t trial_index, Purpose purpose, uint64_t law_index = 0);

}  // namespace densemimo::rng
