#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace matchfield {

// Seedable RNG with platform-independent output. The mt19937_64 stream is
// pinned by the standard; bounded draws avoid std::uniform_int_distribution,
// whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n), n > 0. Rejection keeps the draw exactly uniform.
  uint64_t below(uint64_t n) {
    assert(n > 0);
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    uint64_t v = eng_();
    while (v < threshold) v = eng_();
    return v % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace matchfield
