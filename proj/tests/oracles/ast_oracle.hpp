#pragma once

// Test-only oracles. Nothing here calls into the flowgraph module: coverage
// is recomputed straight from the AST by expanding every execution trace and
// trying every subset of traces.

#include <cstdint>
#include <string>
#include <vector>

#include "covquiz/minilang.hpp"

namespace covquiz::oracle {

struct OracleCounts {
  int path = 0;
  int branch = 0;
  int statement = 0;
};

/// Each statement executed, and each decision outcome taken, is one element
/// of a trace. Loops run 0..loop_bound iterations per activation.
OracleCounts ast_counts(const minilang::Program& program, int loop_bound);

/// Smallest number of sets whose union contains `universe`, by trying every
/// k-subset for k = 1, 2, ...; 0 when the universe is empty, -1 if impossible.
int exhaustive_min_cover(const std::vector<int>& universe, const std::vector<std::vector<int>>& sets);

/// Random structured program with at most `max_decisions` if/while/for
/// statements, returned as canonical source text.
std::string random_program(std::uint64_t seed, int max_decisions);

}  // namespace covquiz::oracle
