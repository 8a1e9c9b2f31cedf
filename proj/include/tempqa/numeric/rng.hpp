#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tempqa::numeric {

// Seeded generator with distribution helpers whose output does not depend on
// the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 42) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();
  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(i)]);
  }

  // k distinct indices from [0, n) in sampling order; all of them when k >= n.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit hash (FNV-1a) for deriving per-key seeds.
std::uint64_t stable_hash(std::string_view text, std::uint64_t salt = 0);

}  // namespace tempqa::numeric
