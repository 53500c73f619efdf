#pragma once

#include <cstdint>

namespace varlex {

// splitmix64 generator. Hand-rolled instead of <random> distributions so
// seeded results are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform double in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // integer in [0, n), n > 0; modulo bias is irrelevant at our scales
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // integer in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin(double p_true = 0.5) { return uniform() < p_true; }

  // derive a stream-independent sub-seed
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    Rng t(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
    return t.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace varlex
