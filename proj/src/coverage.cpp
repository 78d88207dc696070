#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "covquiz/error.hpp"
#include "covquiz/flowgraph.hpp"

namespace covquiz::flowgraph {
namespace {

class PathWalker {
 public:
  PathWalker(const FlowGraph& graph, int loop_bound, std::size_t cap)
      : graph_(graph),
        bound_(loop_bound),
        cap_(cap),
        out_(graph.nodes.size()),
        is_loop_(graph.nodes.size(), false),
        iterations_(graph.nodes.size(), 0) {
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
      const Edge& e = graph.edges[i];
      out_[static_cast<std::size_t>(e.from)].push_back(i);
      if (e.tag == BranchTag::LoopEnter) is_loop_[static_cast<std::size_t>(e.from)] = true;
    }
  }

  std::vector<Path> run() {
    walk(graph_.entry_id);
    return std::move(paths_);
  }

 private:
  void walk(int node) {
    if (node == graph_.exit_id) {
      if (paths_.size() >= cap_) {
        throw PathExplosion("more than " + std::to_string(cap_) + " paths at loop bound " +
                            std::to_string(bound_));
      }
      paths_.push_back(Path{current_});
      return;
    }
    const auto n = static_cast<std::size_t>(node);
    for (std::size_t edge_index : out_[n]) {
      const Edge& e = graph_.edges[edge_index];
      // Entering the body commits to one more back-edge traversal.
      if (e.tag == BranchTag::LoopEnter && iterations_[n] >= bound_) continue;
      const auto target = static_cast<std::size_t>(e.to);
      const int saved = iterations_[target];
      if (e.back) {
        ++iterations_[target];
      } else if (is_loop_[target]) {
        iterations_[target] = 0;  // fresh activation of the loop
      }
      current_.push_back(edge_index);
      walk(e.to);
      current_.pop_back();
      iterations_[target] = saved;
    }
  }

  const FlowGraph& graph_;
  int bound_;
  std::size_t cap_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<bool> is_loop_;
  std::vector<int> iterations_;
  std::vector<std::size_t> current_;
  std::vector<Path> paths_;
};

// Fixed-width bitset over a universe whose size is known at runtime.
class Bits {
 public:
  explicit Bits(std::size_t size = 0) : words_((size + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  Bits& operator|=(const Bits& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  bool subset_of(const Bits& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  // Lowest index set in `*this` but not in `other`, or npos.
  std::size_t first_missing_from(const Bits& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i] & ~other.words_[i];
      if (w != 0) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
    }
    return npos;
  }

  friend bool operator==(const Bits&, const Bits&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

struct Encoded {
  Bits full;
  std::vector<Bits> sets;
};

// Maps universe elements onto bit positions; elements outside the universe
// are ignored. Throws when an element is on no candidate.
Encoded encode(const ElementSet& universe, const std::vector<ElementSet>& candidates) {
  std::map<int, std::size_t> position;
  for (int e : universe) position.emplace(e, position.size());
  Encoded enc{Bits(position.size()), {}};
  for (std::size_t i = 0; i < position.size(); ++i) enc.full.set(i);
  Bits seen(position.size());
  for (const ElementSet& c : candidates) {
    Bits b(position.size());
    for (int e : c) {
      auto it = position.find(e);
      if (it != position.end()) b.set(it->second);
    }
    seen |= b;
    enc.sets.push_back(std::move(b));
  }
  for (const auto& [element, pos] : position) {
    if (!seen.test(pos)) {
      throw UncoverableElement("element " + std::to_string(element) + " lies on no candidate");
    }
  }
  return enc;
}

class CoverSearch {
 public:
  CoverSearch(const Bits& full, const std::vector<Bits>& sets, const std::vector<std::size_t>& pool,
              std::size_t budget)
      : full_(full), sets_(sets), pool_(pool), budget_(budget) {}

  // Smallest subset of `pool` that together with `base` covers the universe.
  std::optional<std::vector<std::size_t>> solve(const Bits& base) {
    for (std::size_t k = 0; k <= pool_.size(); ++k) {
      chosen_.clear();
      if (dfs(base, k)) return chosen_;
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  bool dfs(const Bits& covered, std::size_t slots) {
    if (++work_ > budget_) {
      exhausted_ = true;
      return false;
    }
    std::size_t missing = full_.first_missing_from(covered);
    if (missing == Bits::npos) return true;
    if (slots == 0) return false;
    // Some chosen set must contain the lowest uncovered element.
    for (std::size_t idx : pool_) {
      if (!sets_[idx].test(missing)) continue;
      Bits next = covered;
      next |= sets_[idx];
      chosen_.push_back(idx);
      if (dfs(next, slots - 1)) return true;
      chosen_.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const Bits& full_;
  const std::vector<Bits>& sets_;
  const std::vector<std::size_t>& pool_;
  std::size_t budget_;
  std::size_t work_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> chosen_;
};

struct MinCover {
  int size = 0;
  bool exact = true;
};

MinCover minimum_cover(const ElementSet& universe, const std::vector<ElementSet>& candidates,
                       std::size_t budget) {
  if (auto exact = exact_cover(universe, candidates, budget)) {
    return {static_cast<int>(exact->size()), true};
  }
  return {static_cast<int>(greedy_cover(universe, candidates).size()), false};
}

std::vector<ElementSet> node_sets(const FlowGraph& graph, const std::vector<Path>& paths) {
  std::vector<ElementSet> out;
  out.reserve(paths.size());
  for (const Path& p : paths) out.push_back(path_nodes(graph, p));
  return out;
}

std::vector<ElementSet> edge_sets(const std::vector<Path>& paths) {
  std::vector<ElementSet> out;
  out.reserve(paths.size());
  for (const Path& p : paths) {
    ElementSet s;
    for (std::size_t e : p.edges) s.push_back(static_cast<int>(e));
    out.push_back(std::move(s));
  }
  return out;
}

ElementSet all_nodes(const FlowGraph& graph) {
  ElementSet u(graph.nodes.size());
  std::iota(u.begin(), u.end(), 0);
  return u;
}

ElementSet as_elements(const std::vector<std::size_t>& edges) {
  return ElementSet(edges.begin(), edges.end());
}

// Smallest k such that some k paths cover `universe`, trying every subset.
int brute_force_minimum(const ElementSet& universe, const std::vector<ElementSet>& candidates) {
  Encoded enc = encode(universe, candidates);
  const std::size_t n = enc.sets.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      Bits covered(universe.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) covered |= enc.sets[i];
      }
      if (enc.full.subset_of(covered)) return static_cast<int>(k);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return 0;
}

}  // namespace

std::vector<Path> enumerate_paths(const FlowGraph& graph, int loop_bound, std::size_t cap) {
  if (loop_bound < 0) throw Error("loop bound must be non-negative");
  return PathWalker(graph, loop_bound, cap).run();
}

std::vector<int> path_nodes(const FlowGraph& graph, const Path& path) {
  std::vector<int> nodes{graph.entry_id};
  for (std::size_t e : path.edges) nodes.push_back(graph.edges[e].to);
  return nodes;
}

std::vector<std::size_t> decision_edges(const FlowGraph& graph) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (graph.nodes[static_cast<std::size_t>(graph.edges[i].from)].kind == NodeKind::Decision) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> greedy_cover(const ElementSet& universe, const std::vector<ElementSet>& candidates) {
  Encoded enc = encode(universe, candidates);
  Bits covered(universe.size());
  std::vector<std::size_t> picked;
  while (!enc.full.subset_of(covered)) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < enc.sets.size(); ++i) {
      std::size_t gain = 0;
      for (std::size_t b = 0; b < universe.size(); ++b) {
        if (enc.sets[i].test(b) && !covered.test(b)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    covered |= enc.sets[best];
    picked.push_back(best);
  }
  return picked;
}

std::optional<std::vector<std::size_t>> exact_cover(const ElementSet& universe,
                                                    const std::vector<ElementSet>& candidates,
                                                    std::size_t budget) {
  Encoded enc = encode(universe, candidates);
  const std::size_t n = enc.sets.size();

  // Drop empty, duplicate and strictly dominated candidates; the minimum is unchanged.
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i) {
    if (enc.sets[i].none()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < n && !redundant; ++j) {
      if (i == j || !enc.sets[i].subset_of(enc.sets[j])) continue;
      redundant = !(enc.sets[i] == enc.sets[j]) || j < i;
    }
    if (!redundant) pool.push_back(i);
  }

  // Candidates that alone carry some element belong to every cover.
  std::vector<std::size_t> forced;
  Bits base(universe.size());
  for (std::size_t bit = 0; bit < universe.size(); ++bit) {
    std::size_t holder = Bits::npos;
    int holders = 0;
    for (std::size_t idx : pool) {
      if (enc.sets[idx].test(bit)) {
        holder = idx;
        ++holders;
      }
    }
    if (holders == 1 && std::find(forced.begin(), forced.end(), holder) == forced.end()) {
      forced.push_back(holder);
      base |= enc.sets[holder];
    }
  }
  std::vector<std::size_t> rest;
  for (std::size_t idx : pool) {
    if (std::find(forced.begin(), forced.end(), idx) == forced.end()) rest.push_back(idx);
  }

  CoverSearch search(enc.full, enc.sets, rest, budget);
  auto found = search.solve(base);
  if (!found) return std::nullopt;
  found->insert(found->end(), forced.begin(), forced.end());
  std::sort(found->begin(), found->end());
  return found;
}

CoverageCounts coverage_counts(const FlowGraph& graph, const AnalysisConfig& config) {
  auto paths = enumerate_paths(graph, config.loop_bound, config.path_cap);
  CoverageCounts counts;
  counts.loop_bound = config.loop_bound;
  counts.path = static_cast<int>(paths.size());

  MinCover statement = minimum_cover(all_nodes(graph), node_sets(graph, paths), config.subset_budget);
  counts.statement = statement.size;

  auto outcomes = decision_edges(graph);
  MinCover branch{1, true};
  if (!outcomes.empty()) branch = minimum_cover(as_elements(outcomes), edge_sets(paths), config.subset_budget);
  counts.branch = branch.size;
  counts.approximate = !statement.exact || !branch.exact;
  return counts;
}

CoverageCounts brute_force_counts(const FlowGraph& graph, int loop_bound, std::size_t cap) {
  auto paths = enumerate_paths(graph, loop_bound, cap);
  CoverageCounts counts;
  counts.loop_bound = loop_bound;
  counts.path = static_cast<int>(paths.size());
  counts.statement = brute_force_minimum(all_nodes(graph), node_sets(graph, paths));
  auto outcomes = decision_edges(graph);
  counts.branch = outcomes.empty() ? 1 : brute_force_minimum(as_elements(outcomes), edge_sets(paths));
  return counts;
}

}  // namespace covquiz::flowgraph
