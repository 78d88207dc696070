#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covquiz/minilang.hpp"

namespace covquiz::flowgraph {

enum class NodeKind { Entry, Exit, Statement, Decision };

enum class BranchTag { None, True, False, LoopEnter, LoopExit };

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::Statement;
  std::string label;
  int line = 0;       // 0 for entry and exit
  bool join = false;  // merge point closing an if; kind is Statement

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  int from = 0;
  int to = 0;
  BranchTag tag = BranchTag::None;
  bool back = false;  // closes a loop: runs from the end of a body to its decision

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Structured control-flow graph. Node ids are dense, assigned in source
/// order, and topological with respect to forward (non-back) edges. Edges are
/// sorted by source node, with the true/loop-enter outcome before the
/// false/loop-exit outcome of a decision.
struct FlowGraph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int entry_id = 0;
  int exit_id = 0;

  /// Indices into `edges` of the edges leaving `node`, in stored order.
  std::vector<std::size_t> outgoing(int node) const;

  friend bool operator==(const FlowGraph&, const FlowGraph&) = default;
};

enum class TestingMethod { PathCoverage, BranchCoverage, StatementCoverage };

inline constexpr TestingMethod kAllMethods[] = {
    TestingMethod::PathCoverage, TestingMethod::BranchCoverage, TestingMethod::StatementCoverage};

/// "path", "branch", "statement".
std::string_view method_key(TestingMethod method);
/// Accepts the keys produced by method_key.
std::optional<TestingMethod> parse_method(std::string_view key);

std::string_view kind_name(NodeKind kind);
std::string_view tag_name(BranchTag tag);
std::optional<NodeKind> parse_kind(std::string_view name);
std::optional<BranchTag> parse_tag(std::string_view name);

struct CoverageCounts {
  int path = 0;
  int branch = 0;
  int statement = 0;
  int loop_bound = 1;
  bool approximate = false;  // a minimum fell back to the greedy cover

  int get(TestingMethod method) const;

  friend bool operator==(const CoverageCounts&, const CoverageCounts&) = default;
};

inline constexpr std::size_t kDefaultPathCap = 10'000;
inline constexpr std::size_t kDefaultSubsetBudget = 1'000'000;

struct AnalysisConfig {
  int loop_bound = 1;
  std::size_t path_cap = kDefaultPathCap;
  std::size_t subset_budget = kDefaultSubsetBudget;
};

/// Ordered edge indices from entry to exit.
struct Path {
  std::vector<std::size_t> edges;

  friend bool operator==(const Path&, const Path&) = default;
};

FlowGraph build_cfg(const minilang::Program& program);

/// Checks the structural invariants (single entry/exit, decision out-degree,
/// reachability). Returns a description of the first violation, if any.
std::optional<std::string> validate(const FlowGraph& graph);

/// Every complete path in which each loop's back edge is taken at most
/// `loop_bound` times per activation of that loop. Order is lexicographic over
/// branch choices with true/loop-enter first. Throws PathExplosion once more
/// than `cap` paths exist.
std::vector<Path> enumerate_paths(const FlowGraph& graph, int loop_bound,
                                  std::size_t cap = kDefaultPathCap);

/// Node ids visited by `path`, in order, starting with the entry.
std::vector<int> path_nodes(const FlowGraph& graph, const Path& path);

/// Edge indices of all decision outcomes (the branch-coverage universe).
std::vector<std::size_t> decision_edges(const FlowGraph& graph);

using ElementSet = std::vector<int>;

/// Greedy set cover: repeatedly takes the candidate covering the most
/// uncovered elements (lowest index on ties). Returns candidate indices in
/// pick order. Throws UncoverableElement when some element is on no candidate.
std::vector<std::size_t> greedy_cover(const ElementSet& universe,
                                      const std::vector<ElementSet>& candidates);

/// Exact minimum cover by increasing-cardinality subset search after removing
/// duplicate and dominated candidates. Returns std::nullopt when more than
/// `budget` partial subsets would have to be examined. Throws
/// UncoverableElement like greedy_cover.
std::optional<std::vector<std::size_t>> exact_cover(const ElementSet& universe,
                                                    const std::vector<ElementSet>& candidates,
                                                    std::size_t budget = kDefaultSubsetBudget);

/// path = number of bounded paths; branch = minimum number of paths covering
/// every decision outcome (1 for decision-free graphs); statement = minimum
/// number of paths covering every node.
CoverageCounts coverage_counts(const FlowGraph& graph, const AnalysisConfig& config = {});

/// Plain recomputation used for verification: enumerate paths, then try every
/// subset by increasing size with no pruning and no budget.
CoverageCounts brute_force_counts(const FlowGraph& graph, int loop_bound,
                                  std::size_t cap = kDefaultPathCap);

}  // namespace covquiz::flowgraph
