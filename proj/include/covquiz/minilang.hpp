#pragma once

// Parser and canonical printer for the small Python-style snippet language
// used by the item bank: assignments, expression statements, print calls,
// if/elif/else, while and for-in. One statement per line, blocks by indent.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace covquiz::minilang {

enum class ExprKind {
  IntLit,
  FloatLit,
  StringLit,
  BoolLit,
  Name,
  ListLit,
  Call,       // operands: callee, then arguments
  Attribute,  // operands: object; text: attribute name
  BinOp,      // operands: lhs, rhs; text: operator
  UnaryOp,    // operands: operand; text: "not" or "-"
  Index,      // operands: object, index
};

/// Expression tree node. `text` holds the literal lexeme, the decoded string
/// value, the identifier, or the operator, depending on `kind`.
struct Expr {
  ExprKind kind = ExprKind::Name;
  std::string text;
  std::vector<Expr> operands;

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
  Expr target;
  std::string op;  // "=", "+=", "-=", "*=", "/="
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct ExprStmt {
  Expr expr;
  friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
};

struct Print {
  std::vector<Expr> args;
  friend bool operator==(const Print&, const Print&) = default;
};

/// An `elif` is stored as a single nested If forming the whole else block.
struct If {
  Expr condition;
  Block then_block;
  Block else_block;  // empty when there is no else
  friend bool operator==(const If&, const If&) = default;
};

struct While {
  Expr condition;
  Block body;
  friend bool operator==(const While&, const While&) = default;
};

struct For {
  std::string variable;
  Expr iterable;
  Block body;
  friend bool operator==(const For&, const For&) = default;
};

struct Stmt {
  int line = 0;  // 1-based source line
  std::variant<Assign, ExprStmt, Print, If, While, For> node;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Program {
  Block statements;
  std::string source_text;
  std::string source_id;
};

/// Parses a snippet. Throws SyntaxError (with line and column) on any
/// malformed input; never returns a partial program.
Program parse(std::string_view source_text, std::string source_id = {});

/// Deterministic pretty-printer: four-space indents, minimal parentheses,
/// double-quoted strings, `elif` for nested else-if chains.
std::string canonical_text(const Program& program);

/// Canonical single-line rendering of an expression.
std::string expr_text(const Expr& expr);

/// Structural equality: same statements and expressions, line numbers ignored.
bool same_structure(const Block& a, const Block& b);
bool same_structure(const Program& a, const Program& b);

/// True when `stmt` is an If whose else block is exactly one If (an elif).
bool is_elif_chain(const If& stmt);

}  // namespace covquiz::minilang
