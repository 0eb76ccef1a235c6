#pragma once

#include <cstdint>
#include <vector>

namespace proxilab {

// Deterministic generator used everywhere randomness is needed. All verdicts
// must reproduce bit-for-bit under the same seed, so we avoid the
// implementation-defined std:: distributions and derive doubles ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t uniform_index(std::uint64_t n) { return n ? next_u64() % n : 0; }

  Rng fork() { return Rng(next_u64()); }

 private:
  std::uint64_t state_;
};

// Van der Corput / Halton low-discrepancy sequences for stratified sampling.
inline double van_der_corput(std::uint32_t i, std::uint32_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

inline std::vector<double> halton_point(std::uint32_t i, int dims) {
  static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  std::vector<double> u(dims);
  for (int d = 0; d < dims; ++d) u[d] = van_der_corput(i + 1, primes[d % 10]);
  return u;
}

}  // namespace proxilab
