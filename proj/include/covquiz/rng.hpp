#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace covquiz {

/// Seeded generator with a portable uniform index draw and a log of every
/// draw, so a question can be traced back to the choices that produced it.
///
/// std::uniform_int_distribution is implementation-defined; the rejection
/// sampler below gives the same sequence with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Fisher-Yates shuffle driven by index().
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[index(i)]);
    }
  }

  /// k distinct positions out of [0, n), in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

  const std::vector<std::size_t>& draws() const { return draws_; }
  void clear_log() { draws_.clear(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::vector<std::size_t> draws_;
};

/// Seed from the system entropy source, for runs without an explicit seed.
std::uint64_t fresh_seed();

}  // namespace covquiz
