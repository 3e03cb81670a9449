#pragma once

#include <cstdint>
#include <random>

#include "nsl/errors.hpp"

namespace nsl {

// Seeded generator with platform-independent derived draws (std distributions
// are implementation-defined; golden tests need byte-stable sequences).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t u64() { return eng_(); }

  // Uniform in [0, n), n > 0, via rejection sampling.
  int below(int n) {
    require(n > 0, Errc::Domain, "Rng::below needs n > 0");
    uint64_t bound = ~uint64_t{0} - (~uint64_t{0} % static_cast<uint64_t>(n));
    uint64_t x = u64();
    while (x >= bound) x = u64();
    return static_cast<int>(x % static_cast<uint64_t>(n));
  }

  // Uniform in [lo, hi] inclusive.
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (u64() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nsl
