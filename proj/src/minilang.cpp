#include "covquiz/minilang.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>

#include "covquiz/error.hpp"

namespace covquiz::minilang {
namespace {

enum class Tok { Name, Keyword, Number, String, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;
  int indent = 0;
  std::vector<Token> tokens;  // always terminated by Tok::End
};

bool is_keyword(std::string_view word) {
  static constexpr std::string_view kKeywords[] = {
      "if", "elif", "else", "while", "for", "in", "and", "or", "not", "True", "False"};
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex_line(std::string_view text, int line_no, std::size_t start) {
  std::vector<Token> out;
  std::size_t i = start;
  auto col = [](std::size_t pos) { return static_cast<int>(pos) + 1; };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Name, std::move(word), col(i)});
      i = j;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
      }
      if (j < text.size() && is_ident_start(text[j])) {
        throw SyntaxError(line_no, col(j), "malformed number");
      }
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), col(i)});
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < text.size()) {
        char d = text[j];
        if (d == c) {
          closed = true;
          ++j;
          break;
        }
        if (d == '\\') {
          if (j + 1 >= text.size()) break;
          char e = text[j + 1];
          switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case '\\': value += '\\'; break;
            case '"': value += '"'; break;
            case '\'': value += '\''; break;
            default:
              throw SyntaxError(line_no, col(j), "unsupported escape sequence");
          }
          j += 2;
          continue;
        }
        value += d;
        ++j;
      }
      if (!closed) throw SyntaxError(line_no, col(i), "unterminated string literal");
      out.push_back({Tok::String, std::move(value), col(i)});
      i = j;
      continue;
    }
    // Two-character operators first.
    if (i + 1 < text.size()) {
      std::string two(text.substr(i, 2));
      if (two == "==" || two == "!=" || two == "<=" || two == ">=" || two == "+=" ||
          two == "-=" || two == "*=" || two == "/=") {
        out.push_back({Tok::Op, std::move(two), col(i)});
        i += 2;
        continue;
      }
    }
    if (std::string_view("+-*/<>=()[],.:").find(c) != std::string_view::npos) {
      out.push_back({Tok::Op, std::string(1, c), col(i)});
      ++i;
      continue;
    }
    throw SyntaxError(line_no, col(i), std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", col(text.size())});
  return out;
}

std::vector<Line> split_lines(std::string_view source) {
  std::vector<Line> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t nl = source.find('\n', pos);
    std::string_view raw = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    std::size_t indent = 0;
    while (indent < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) {
      if (raw[indent] == '\t') throw SyntaxError(line_no, static_cast<int>(indent) + 1, "tab in indentation");
      ++indent;
    }
    bool blank = true;
    for (std::size_t k = indent; k < raw.size(); ++k) {
      if (raw[k] != ' ' && raw[k] != '\t' && raw[k] != '\r') {
        blank = false;
        break;
      }
    }
    if (!blank) {
      lines.push_back({line_no, static_cast<int>(indent), lex_line(raw, line_no, indent)});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

Expr make(ExprKind kind, std::string text, std::vector<Expr> operands = {}) {
  return Expr{kind, std::move(text), std::move(operands)};
}

class ExprParser {
 public:
  ExprParser(const Line& line, std::size_t pos) : line_(line), pos_(pos) {}

  std::size_t position() const { return pos_; }
  const Token& peek() const { return line_.tokens[pos_]; }

  bool at_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Keyword && peek().text == kw; }

  Token advance() { return line_.tokens[pos_ < line_.tokens.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_.number, peek().column, message);
  }

  void expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    advance();
  }

  Expr parse_expr() { return parse_or(); }

 private:
  Expr parse_or() {
    Expr lhs = parse_and();
    while (at_keyword("or")) {
      advance();
      lhs = make(ExprKind::BinOp, "or", {std::move(lhs), parse_and()});
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (at_keyword("and")) {
      advance();
      lhs = make(ExprKind::BinOp, "and", {std::move(lhs), parse_not()});
    }
    return lhs;
  }

  Expr parse_not() {
    if (at_keyword("not")) {
      advance();
      return make(ExprKind::UnaryOp, "not", {parse_not()});
    }
    return parse_comparison();
  }

  Expr parse_comparison() {
    Expr lhs = parse_arith();
    while (peek().kind == Tok::Op &&
           (peek().text == "==" || peek().text == "!=" || peek().text == "<" ||
            peek().text == "<=" || peek().text == ">" || peek().text == ">=")) {
      std::string op = advance().text;
      lhs = make(ExprKind::BinOp, std::move(op), {std::move(lhs), parse_arith()});
    }
    return lhs;
  }

  Expr parse_arith() {
    Expr lhs = parse_term();
    while (at_op("+") || at_op("-")) {
      std::string op = advance().text;
      lhs = make(ExprKind::BinOp, std::move(op), {std::move(lhs), parse_term()});
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (at_op("*") || at_op("/")) {
      std::string op = advance().text;
      lhs = make(ExprKind::BinOp, std::move(op), {std::move(lhs), parse_unary()});
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at_op("-")) {
      advance();
      return make(ExprKind::UnaryOp, "-", {parse_unary()});
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_atom();
    for (;;) {
      if (at_op("(")) {
        advance();
        std::vector<Expr> operands;
        operands.push_back(std::move(e));
        if (!at_op(")")) {
          operands.push_back(parse_expr());
          while (at_op(",")) {
            advance();
            operands.push_back(parse_expr());
          }
        }
        expect_op(")");
        e = make(ExprKind::Call, "", std::move(operands));
      } else if (at_op("[")) {
        advance();
        Expr index = parse_expr();
        expect_op("]");
        e = make(ExprKind::Index, "", {std::move(e), std::move(index)});
      } else if (at_op(".")) {
        advance();
        if (peek().kind != Tok::Name) fail("expected attribute name");
        std::string name = advance().text;
        e = make(ExprKind::Attribute, std::move(name), {std::move(e)});
      } else {
        return e;
      }
    }
  }

  Expr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Name: {
        std::string name = advance().text;
        return make(ExprKind::Name, std::move(name));
      }
      case Tok::Number: {
        std::string text = advance().text;
        bool is_float = text.find('.') != std::string::npos;
        return make(is_float ? ExprKind::FloatLit : ExprKind::IntLit, std::move(text));
      }
      case Tok::String: {
        std::string text = advance().text;
        return make(ExprKind::StringLit, std::move(text));
      }
      case Tok::Keyword:
        if (t.text == "True" || t.text == "False") {
          std::string text = advance().text;
          return make(ExprKind::BoolLit, std::move(text));
        }
        fail("unexpected keyword '" + t.text + "'");
      case Tok::Op:
        if (t.text == "(") {
          advance();
          Expr inner = parse_expr();
          expect_op(")");
          return inner;
        }
        if (t.text == "[") {
          advance();
          std::vector<Expr> items;
          if (!at_op("]")) {
            items.push_back(parse_expr());
            while (at_op(",")) {
              advance();
              items.push_back(parse_expr());
            }
          }
          expect_op("]");
          return make(ExprKind::ListLit, "", std::move(items));
        }
        fail("expected expression");
      case Tok::End:
        fail("expected expression");
    }
    fail("expected expression");
  }

  const Line& line_;
  std::size_t pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Block parse_program() {
    if (lines_.empty()) throw SyntaxError(1, 1, "empty program");
    if (lines_.front().indent != 0) {
      throw SyntaxError(lines_.front().number, 1, "unexpected indentation");
    }
    Block body = parse_block(0);
    if (index_ != lines_.size()) {
      throw SyntaxError(lines_[index_].number, 1, "inconsistent indentation");
    }
    return body;
  }

 private:
  static bool starts_with_keyword(const Line& line, std::string_view kw) {
    const Token& t = line.tokens.front();
    return t.kind == Tok::Keyword && t.text == kw;
  }

  Block parse_block(int indent) {
    Block out;
    while (index_ < lines_.size()) {
      const Line& line = lines_[index_];
      if (line.indent < indent) break;
      if (line.indent > indent) throw SyntaxError(line.number, 1, "unexpected indentation");
      out.push_back(parse_statement());
    }
    return out;
  }

  // Parses the indented block following a header line.
  Block parse_suite(const Line& header) {
    if (index_ >= lines_.size() || lines_[index_].indent <= header.indent) {
      throw SyntaxError(header.number, static_cast<int>(header.tokens.back().column),
                        "expected an indented block");
    }
    return parse_block(lines_[index_].indent);
  }

  // Parses `<kw> expr :` and returns the condition.
  Expr parse_header_condition(const Line& line) {
    ExprParser p(line, 1);
    Expr cond = p.parse_expr();
    p.expect_op(":");
    if (p.peek().kind != Tok::End) p.fail("unexpected token after ':'");
    return cond;
  }

  static void expect_bare_header(const Line& line) {
    ExprParser p(line, 1);
    p.expect_op(":");
    if (p.peek().kind != Tok::End) p.fail("unexpected token after ':'");
  }

  Stmt parse_if(const Line& header) {
    If node;
    node.condition = parse_header_condition(header);
    node.then_block = parse_suite(header);
    if (index_ < lines_.size() && lines_[index_].indent == header.indent) {
      const Line& next = lines_[index_];
      if (starts_with_keyword(next, "elif")) {
        ++index_;
        node.else_block.push_back(parse_if(next));
      } else if (starts_with_keyword(next, "else")) {
        ++index_;
        expect_bare_header(next);
        node.else_block = parse_suite(next);
      }
    }
    return Stmt{header.number, std::move(node)};
  }

  Stmt parse_statement() {
    const Line& line = lines_[index_++];
    const Token& first = line.tokens.front();
    if (first.kind == Tok::Keyword) {
      if (first.text == "if") return parse_if(line);
      if (first.text == "while") {
        While node;
        node.condition = parse_header_condition(line);
        node.body = parse_suite(line);
        return Stmt{line.number, std::move(node)};
      }
      if (first.text == "for") {
        ExprParser p(line, 1);
        if (p.peek().kind != Tok::Name) p.fail("expected loop variable");
        For node;
        node.variable = p.advance().text;
        if (!p.at_keyword("in")) p.fail("expected 'in'");
        p.advance();
        node.iterable = p.parse_expr();
        p.expect_op(":");
        if (p.peek().kind != Tok::End) p.fail("unexpected token after ':'");
        node.body = parse_suite(line);
        return Stmt{line.number, std::move(node)};
      }
      if (first.text == "elif" || first.text == "else") {
        throw SyntaxError(line.number, first.column, "'" + first.text + "' without matching 'if'");
      }
    }
    return parse_simple(line);
  }

  static bool is_assign_op(const Token& t) {
    return t.kind == Tok::Op &&
           (t.text == "=" || t.text == "+=" || t.text == "-=" || t.text == "*=" || t.text == "/=");
  }

  static Stmt parse_simple(const Line& line) {
    ExprParser p(line, 0);
    Expr lhs = p.parse_expr();
    if (is_assign_op(p.peek())) {
      if (lhs.kind != ExprKind::Name && lhs.kind != ExprKind::Index && lhs.kind != ExprKind::Attribute) {
        throw SyntaxError(line.number, line.tokens.front().column, "invalid assignment target");
      }
      std::string op = p.advance().text;
      Expr value = p.parse_expr();
      if (p.peek().kind != Tok::End) p.fail("unexpected token");
      return Stmt{line.number, Assign{std::move(lhs), std::move(op), std::move(value)}};
    }
    if (p.peek().kind != Tok::End) p.fail("unexpected token");
    if (lhs.kind == ExprKind::Call && lhs.operands.front().kind == ExprKind::Name &&
        lhs.operands.front().text == "print") {
      Print node;
      node.args.assign(lhs.operands.begin() + 1, lhs.operands.end());
      return Stmt{line.number, std::move(node)};
    }
    return Stmt{line.number, ExprStmt{std::move(lhs)}};
  }

  std::vector<Line> lines_;
  std::size_t index_ = 0;
};

// Binding strength used by the printer; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::BinOp:
      if (e.text == "or") return 1;
      if (e.text == "and") return 2;
      if (e.text == "+" || e.text == "-") return 5;
      if (e.text == "*" || e.text == "/") return 6;
      return 4;  // comparisons
    case ExprKind::UnaryOp:
      return e.text == "not" ? 3 : 7;
    case ExprKind::Call:
    case ExprKind::Attribute:
    case ExprKind::Index:
      return 8;
    default:
      return 9;
  }
}

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

void print_expr(const Expr& e, int min_prec, std::string& out);

void print_list(const std::vector<Expr>& items, std::size_t from, std::string& out) {
  for (std::size_t i = from; i < items.size(); ++i) {
    if (i > from) out += ", ";
    print_expr(items[i], 0, out);
  }
}

void print_expr(const Expr& e, int min_prec, std::string& out) {
  int prec = precedence(e);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case ExprKind::IntLit:
    case ExprKind::FloatLit:
    case ExprKind::BoolLit:
    case ExprKind::Name:
      out += e.text;
      break;
    case ExprKind::StringLit:
      out += quote(e.text);
      break;
    case ExprKind::ListLit:
      out += '[';
      print_list(e.operands, 0, out);
      out += ']';
      break;
    case ExprKind::Call:
      print_expr(e.operands[0], 8, out);
      out += '(';
      print_list(e.operands, 1, out);
      out += ')';
      break;
    case ExprKind::Attribute:
      print_expr(e.operands[0], 8, out);
      out += '.';
      out += e.text;
      break;
    case ExprKind::Index:
      print_expr(e.operands[0], 8, out);
      out += '[';
      print_expr(e.operands[1], 0, out);
      out += ']';
      break;
    case ExprKind::UnaryOp:
      out += e.text == "not" ? "not " : "-";
      print_expr(e.operands[0], prec, out);
      break;
    case ExprKind::BinOp:
      print_expr(e.operands[0], prec, out);
      out += ' ';
      out += e.text;
      out += ' ';
      print_expr(e.operands[1], prec + 1, out);
      break;
  }
  if (parens) out += ')';
}

void print_block(const Block& block, int depth, std::string& out);

void print_if(const If& node, int depth, const char* keyword, std::string& out) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  out += pad + keyword + " " + expr_text(node.condition) + ":\n";
  print_block(node.then_block, depth + 1, out);
  if (is_elif_chain(node)) {
    print_if(std::get<If>(node.else_block.front().node), depth, "elif", out);
  } else if (!node.else_block.empty()) {
    out += pad + "else:\n";
    print_block(node.else_block, depth + 1, out);
  }
}

void print_block(const Block& block, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  for (const Stmt& stmt : block) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Assign>) {
            out += pad + expr_text(node.target) + " " + node.op + " " + expr_text(node.value) + "\n";
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            out += pad + expr_text(node.expr) + "\n";
          } else if constexpr (std::is_same_v<T, Print>) {
            out += pad + "print(";
            print_list(node.args, 0, out);
            out += ")\n";
          } else if constexpr (std::is_same_v<T, If>) {
            print_if(node, depth, "if", out);
          } else if constexpr (std::is_same_v<T, While>) {
            out += pad + "while " + expr_text(node.condition) + ":\n";
            print_block(node.body, depth + 1, out);
          } else {
            out += pad + "for " + node.variable + " in " + expr_text(node.iterable) + ":\n";
            print_block(node.body, depth + 1, out);
          }
        },
        stmt.node);
  }
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, If>) {
          return x.condition == y.condition && same_structure(x.then_block, y.then_block) &&
                 same_structure(x.else_block, y.else_block);
        } else if constexpr (std::is_same_v<T, While>) {
          return x.condition == y.condition && same_structure(x.body, y.body);
        } else if constexpr (std::is_same_v<T, For>) {
          return x.variable == y.variable && x.iterable == y.iterable && same_structure(x.body, y.body);
        } else {
          return x == y;
        }
      },
      a.node);
}

}  // namespace

Program parse(std::string_view source_text, std::string source_id) {
  Parser parser(split_lines(source_text));
  Program program;
  program.statements = parser.parse_program();
  program.source_text = std::string(source_text);
  program.source_id = std::move(source_id);
  return program;
}

std::string expr_text(const Expr& expr) {
  std::string out;
  print_expr(expr, 0, out);
  return out;
}

std::string canonical_text(const Program& program) {
  std::string out;
  print_block(program.statements, 0, out);
  return out;
}

bool is_elif_chain(const If& stmt) {
  return stmt.else_block.size() == 1 && std::holds_alternative<If>(stmt.else_block.front().node);
}

bool same_structure(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_stmt(a[i], b[i])) return false;
  }
  return true;
}

bool same_structure(const Program& a, const Program& b) { return same_structure(a.statements, b.statements); }

}  // namespace covquiz::minilang
