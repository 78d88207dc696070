#pragma once

#include <random>
#include <string>
#include <vector>

#include "covquiz/bank.hpp"
#include "test_data.hpp"

namespace covquiz::testing {

// Five snippets with path counts 2,2,3,4,5 and pairwise distinct branch and
// statement counts.
inline const std::vector<std::pair<std::string, std::string>>& toy_sources() {
  static const std::vector<std::pair<std::string, std::string>> sources = {
      {"i1", "if a > b:\n    print(a)\nelse:\n    print(b)\n"},
      {"i2", "while n > 0:\n    n = n - 1\n"},
      {"i3", "if n > 0:\n    print(1)\nelif n < 0:\n    print(2)\nelse:\n    print(3)\n"},
      {"i4", "if n > 2:\n    print(1)\nelif n > 1:\n    print(2)\nelif n > 0:\n    print(3)\nelse:\n    print(4)\n"},
      {"i5",
       "if n > 3:\n    print(1)\nelif n > 2:\n    print(2)\nelif n > 1:\n    print(3)\nelif n > 0:\n    print(4)\n"
       "else:\n    print(5)\n"},
  };
  return sources;
}

inline bank::Bank toy_bank() {
  bank::Bank b = bank::make_bank();
  for (const auto& [id, src] : toy_sources()) b = bank::ingest(b, src, id);
  return b;
}

inline bank::Bank corpus_bank(int loop_bound = 1) {
  bank::Bank b = bank::make_bank(loop_bound);
  for (const auto& f : corpus_files()) b = bank::ingest(b, read_file(f), f.stem().string());
  return b;
}

/// Bank of `n` trivial programs whose counts are overridden with random
/// values in 1..max_count, so group structure is arbitrary.
inline bank::Bank synthetic_bank(std::uint64_t seed, int n, int max_count) {
  std::mt19937_64 rng(seed);
  bank::Bank b = bank::make_bank();
  for (int i = 0; i < n; ++i) {
    const std::string id = "s" + std::to_string(i);
    b = bank::ingest(b, "x = " + std::to_string(i) + "\n", id);
    flowgraph::CoverageCounts c;
    c.path = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_count));
    c.branch = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_count));
    c.statement = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_count));
    b = bank::override_counts(b, id, c);
  }
  return b;
}

}  // namespace covquiz::testing
