#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace latrec {

// Counter-based randomness: every draw is a pure function of (key, counter),
// so reproducibility does not depend on evaluation order or thread count.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Folds a seed with sub-stream labels into a stream key.
inline std::uint64_t rng_key(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t k = splitmix64(seed);
  for (std::uint64_t p : parts) k = splitmix64(k ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
  return k;
}

class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) : key_(rng_key(seed, parts)) {}

  std::uint64_t next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  // Uniform in (0,1); never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  // Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  bool bernoulli(double p) { return uniform01() < p; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Fisher-Yates; identity permutation first, then shuffled in place.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = uniform_int(i + 1);
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace latrec
