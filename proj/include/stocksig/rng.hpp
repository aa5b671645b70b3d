#pragma once

#include <cstdint>

namespace stocksig {

// splitmix64: the single PRNG used for every random decision in the
// pipeline (dataset shuffles, synthetic corpus generation). The update is
// fully specified here so identical seeds reproduce bit-for-bit on any
// platform or language.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 bits of mantissa.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Plain modulo; the bias for n << 2^64 is
  // far below anything the pipeline can observe, and the rule is trivial
  // to restate in another language.
  uint64_t bounded(uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  uint64_t state_;
};

}  // namespace stocksig
