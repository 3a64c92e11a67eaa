#pragma once

#include <cstdint>
#include <cmath>

namespace fluidcorr {

// Deterministic RNG with cheap stream splitting. Every consumer derives its
// own stream from (seed, tag...) so that adding draws in one place never
// shifts the values seen elsewhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // burn-in so nearby seeds decorrelate
    next_u64();
    next_u64();
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  Rng split(std::uint64_t tag) const { return Rng(mix(state_, tag)); }
  Rng split(std::uint64_t a, std::uint64_t b) const {
    return Rng(mix(mix(state_, a), b));
  }

  std::uint64_t next_u64() {
    // splitmix64 step
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0, 1), safe for log()
  double next_open() {
    double u = next_double();
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Exact Poisson sampling: sequential inversion below 30, PTRS transformed
  // rejection above. Both paths are deterministic given the stream.
  long poisson(double rate);

 private:
  std::uint64_t state_;
};

}  // namespace fluidcorr
