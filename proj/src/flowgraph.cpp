#include "covquiz/flowgraph.hpp"

#include <algorithm>
#include <utility>
#include <variant>

namespace covquiz::flowgraph {

using minilang::Block;
using minilang::expr_text;
using minilang::Stmt;

namespace {

int tag_rank(BranchTag tag) {
  switch (tag) {
    case BranchTag::None: return 0;
    case BranchTag::True: return 1;
    case BranchTag::False: return 2;
    case BranchTag::LoopEnter: return 3;
    case BranchTag::LoopExit: return 4;
  }
  return 5;
}

// A dangling control transfer waiting for its successor node.
struct Pending {
  int node;
  BranchTag tag;
};

class Builder {
 public:
  FlowGraph build(const Block& statements) {
    int entry = add_node(NodeKind::Entry, "entry", 0);
    auto out = build_block(statements, {{entry, BranchTag::None}});
    int exit = add_node(NodeKind::Exit, "exit", 0);
    connect(out, exit, false);
    graph_.entry_id = entry;
    graph_.exit_id = exit;
    std::stable_sort(graph_.edges.begin(), graph_.edges.end(), [](const Edge& a, const Edge& b) {
      if (a.from != b.from) return a.from < b.from;
      return tag_rank(a.tag) < tag_rank(b.tag);
    });
    return std::move(graph_);
  }

 private:
  int add_node(NodeKind kind, std::string label, int line, bool join = false) {
    int id = static_cast<int>(graph_.nodes.size());
    graph_.nodes.push_back(Node{id, kind, std::move(label), line, join});
    return id;
  }

  void connect(const std::vector<Pending>& from, int to, bool back) {
    for (const Pending& p : from) graph_.edges.push_back(Edge{p.node, to, p.tag, back});
  }

  std::vector<Pending> build_block(const Block& block, std::vector<Pending> incoming) {
    for (const Stmt& stmt : block) incoming = build_stmt(stmt, incoming);
    return incoming;
  }

  std::vector<Pending> build_stmt(const Stmt& stmt, const std::vector<Pending>& incoming) {
    return std::visit(
        [&](const auto& node) -> std::vector<Pending> {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, minilang::If>) {
            int decision = add_node(NodeKind::Decision, "if " + expr_text(node.condition), stmt.line);
            connect(incoming, decision, false);
            auto then_out = build_block(node.then_block, {{decision, BranchTag::True}});
            std::vector<Pending> else_out{{decision, BranchTag::False}};
            if (!node.else_block.empty()) else_out = build_block(node.else_block, std::move(else_out));
            int join = add_node(NodeKind::Statement, "", stmt.line, true);
            connect(then_out, join, false);
            connect(else_out, join, false);
            return {{join, BranchTag::None}};
          } else if constexpr (std::is_same_v<T, minilang::While> || std::is_same_v<T, minilang::For>) {
            std::string label;
            if constexpr (std::is_same_v<T, minilang::While>) {
              label = "while " + expr_text(node.condition);
            } else {
              label = "for " + node.variable + " in " + expr_text(node.iterable);
            }
            int decision = add_node(NodeKind::Decision, std::move(label), stmt.line);
            connect(incoming, decision, false);
            auto body_out = build_block(node.body, {{decision, BranchTag::LoopEnter}});
            connect(body_out, decision, true);
            return {{decision, BranchTag::LoopExit}};
          } else {
            minilang::Program one;
            one.statements.push_back(stmt);
            std::string text = minilang::canonical_text(one);
            if (!text.empty() && text.back() == '\n') text.pop_back();
            int n = add_node(NodeKind::Statement, std::move(text), stmt.line);
            connect(incoming, n, false);
            return {{n, BranchTag::None}};
          }
        },
        stmt.node);
  }

  FlowGraph graph_;
};

}  // namespace

std::vector<std::size_t> FlowGraph::outgoing(int node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == node) out.push_back(i);
  }
  return out;
}

std::string_view method_key(TestingMethod method) {
  switch (method) {
    case TestingMethod::PathCoverage: return "path";
    case TestingMethod::BranchCoverage: return "branch";
    case TestingMethod::StatementCoverage: return "statement";
  }
  return "?";
}

std::optional<TestingMethod> parse_method(std::string_view key) {
  for (TestingMethod m : kAllMethods) {
    if (method_key(m) == key) return m;
  }
  return std::nullopt;
}

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Statement: return "statement";
    case NodeKind::Decision: return "decision";
  }
  return "?";
}

std::string_view tag_name(BranchTag tag) {
  switch (tag) {
    case BranchTag::None: return "none";
    case BranchTag::True: return "true";
    case BranchTag::False: return "false";
    case BranchTag::LoopEnter: return "loop-enter";
    case BranchTag::LoopExit: return "loop-exit";
  }
  return "?";
}

std::optional<NodeKind> parse_kind(std::string_view name) {
  for (NodeKind k : {NodeKind::Entry, NodeKind::Exit, NodeKind::Statement, NodeKind::Decision}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<BranchTag> parse_tag(std::string_view name) {
  for (BranchTag t : {BranchTag::None, BranchTag::True, BranchTag::False, BranchTag::LoopEnter,
                      BranchTag::LoopExit}) {
    if (tag_name(t) == name) return t;
  }
  return std::nullopt;
}

int CoverageCounts::get(TestingMethod method) const {
  switch (method) {
    case TestingMethod::PathCoverage: return path;
    case TestingMethod::BranchCoverage: return branch;
    case TestingMethod::StatementCoverage: return statement;
  }
  return 0;
}

FlowGraph build_cfg(const minilang::Program& program) { return Builder{}.build(program.statements); }

std::optional<std::string> validate(const FlowGraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  if (n < 2) return "graph needs an entry and an exit";
  for (int i = 0; i < n; ++i) {
    if (graph.nodes[i].id != i) return "node ids are not dense";
  }
  if (graph.entry_id < 0 || graph.entry_id >= n || graph.nodes[graph.entry_id].kind != NodeKind::Entry) {
    return "entry_id does not name an entry node";
  }
  if (graph.exit_id < 0 || graph.exit_id >= n || graph.nodes[graph.exit_id].kind != NodeKind::Exit) {
    return "exit_id does not name an exit node";
  }
  std::vector<int> in_forward(n, 0), out_degree(n, 0);
  std::vector<std::vector<int>> succ(n), pred(n);
  for (const Edge& e : graph.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) return "edge endpoint out of range";
    ++out_degree[e.from];
    if (!e.back) ++in_forward[e.to];
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  for (const Node& node : graph.nodes) {
    const int id = node.id;
    switch (node.kind) {
      case NodeKind::Entry:
        if (id != graph.entry_id) return "more than one entry node";
        if (in_forward[id] != 0) return "entry has incoming forward edges";
        if (out_degree[id] != 1) return "entry must have exactly one successor";
        break;
      case NodeKind::Exit:
        if (id != graph.exit_id) return "more than one exit node";
        if (out_degree[id] != 0) return "exit has outgoing edges";
        break;
      case NodeKind::Statement:
        if (out_degree[id] != 1) return "statement node " + std::to_string(id) + " needs one successor";
        break;
      case NodeKind::Decision: {
        auto out = graph.outgoing(id);
        if (out.size() != 2) return "decision node " + std::to_string(id) + " needs two successors";
        if (graph.edges[out[0]].tag == graph.edges[out[1]].tag) {
          return "decision node " + std::to_string(id) + " has duplicate branch tags";
        }
        break;
      }
    }
  }
  auto reach = [&](int start, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  auto fwd = reach(graph.entry_id, succ);
  auto bwd = reach(graph.exit_id, pred);
  for (int i = 0; i < n; ++i) {
    if (!fwd[i]) return "node " + std::to_string(i) + " unreachable from entry";
    if (!bwd[i]) return "node " + std::to_string(i) + " cannot reach exit";
  }
  return std::nullopt;
}

}  // namespace covquiz::flowgraph
