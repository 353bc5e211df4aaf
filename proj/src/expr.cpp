#include "dhc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

#include "dhc/errors.hpp"

namespace dhc {

namespace {

constexpr std::array<std::string_view, 5> kFunctions = {"sin", "cos", "exp",
                                                        "sqrt", "abs"};

int function_of(std::string_view name) {
  for (std::size_t i = 0; i < kFunctions.size(); ++i) {
    if (kFunctions[i] == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

Bindings::Bindings() { values[slot_of("pi")] = 3.14159265358979323846; }

int Bindings::slot_of(std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

Bindings& Bindings::set(std::string_view name, double v) {
  const int slot = slot_of(name);
  if (slot < 0) {
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'",
                            0);
  }
  values[slot] = v;
  return *this;
}

struct Node {
  enum class Kind { Literal, Ident, Neg, Binary, Call };
  Kind kind = Kind::Literal;
  double value = 0.0;  // Literal
  int slot = -1;       // Ident
  char op = 0;         // Binary
  int fn = -1;         // Call
  int a = -1;          // child
  int b = -1;          // right child (Binary)
};

struct Expr::Impl {
  std::vector<Node> nodes;
  int root = -1;
};

namespace {

struct ParseResult {
  std::vector<Node> nodes;
  int root = -1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ParseResult run() {
    ParseResult result;
    nodes_ = &result.nodes;
    result.root = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) {
      throw SyntaxError("unexpected trailing input", pos_);
    }
    if (result.root < 0) {
      throw SyntaxError("empty expression", 0);
    }
    return result;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Node>* nodes_ = nullptr;

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Node n) {
    nodes_->push_back(n);
    return static_cast<int>(nodes_->size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_product();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') {
        return lhs;
      }
      ++pos_;
      const int rhs = parse_product();
      lhs = push({Node::Kind::Binary, 0.0, -1, c, -1, lhs, rhs});
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') {
        return lhs;
      }
      ++pos_;
      const int rhs = parse_unary();
      lhs = push({Node::Kind::Binary, 0.0, -1, c, -1, lhs, rhs});
    }
  }

  int parse_unary() {
    if (consume('-')) {
      const int child = parse_unary();
      return push({Node::Kind::Neg, 0.0, -1, 0, -1, child, -1});
    }
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (!consume('^')) {
      return base;
    }
    // right-associative; the exponent may carry its own unary minus
    const int exponent = parse_unary();
    return push({Node::Kind::Binary, 0.0, -1, '^', -1, base, exponent});
  }

  int parse_primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const int inner = parse_sum();
      if (!consume(')')) {
        throw SyntaxError("expected ')'", pos_);
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    throw SyntaxError("expected a number, identifier or '('", pos_);
  }

  int parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = mark;  // the 'e' was not an exponent
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    double value = 0.0;
    try {
      value = std::stod(text);
    } catch (const std::out_of_range&) {
      throw SyntaxError("numeric literal out of range", start);
    }
    return push({Node::Kind::Literal, value, -1, 0, -1, -1, -1});
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    const int fn = function_of(name);
    if (fn >= 0) {
      if (!consume('(')) {
        throw SyntaxError("function '" + std::string(name) +
                              "' requires an argument list",
                          pos_);
      }
      const int arg = parse_sum();
      if (!consume(')')) {
        throw SyntaxError("expected ')'", pos_);
      }
      return push({Node::Kind::Call, 0.0, -1, 0, fn, arg, -1});
    }
    const int slot = Bindings::slot_of(name);
    if (slot < 0) {
      throw UnknownIdentifier(
          "unknown identifier '" + std::string(name) + "'", start);
    }
    return push({Node::Kind::Ident, 0.0, slot, 0, -1, -1, -1});
  }
};

double eval_node(const std::vector<Node>& nodes, int idx,
                 const Bindings& env) {
  const Node& n = nodes[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case Node::Kind::Literal:
      return n.value;
    case Node::Kind::Ident: {
      const auto& v = env.values[static_cast<std::size_t>(n.slot)];
      if (!v) {
        throw UnboundVariable("unbound variable '" +
                              std::string(Bindings::names[n.slot]) + "'");
      }
      return *v;
    }
    case Node::Kind::Neg:
      return -eval_node(nodes, n.a, env);
    case Node::Kind::Call: {
      const double x = eval_node(nodes, n.a, env);
      switch (n.fn) {
        case 0:
          return std::sin(x);
        case 1:
          return std::cos(x);
        case 2:
          return std::exp(x);
        case 3:
          if (x < 0.0) {
            throw DomainError("sqrt of a negative value");
          }
          return std::sqrt(x);
        default:
          return std::abs(x);
      }
    }
    case Node::Kind::Binary: {
      const double a = eval_node(nodes, n.a, env);
      const double b = eval_node(nodes, n.b, env);
      switch (n.op) {
        case '+':
          return a + b;
        case '-':
          return a - b;
        case '*':
          return a * b;
        case '/':
          if (b == 0.0) {
            throw DomainError("division by zero");
          }
          return a / b;
        default: {  // '^'
          if (a < 0.0 && std::rint(b) != b) {
            throw DomainError("negative base with non-integer exponent");
          }
          if (a == 0.0 && b < 0.0) {
            throw DomainError("zero base with negative exponent");
          }
          return std::pow(a, b);
        }
      }
    }
  }
  return 0.0;  // unreachable
}

void print_node(const std::vector<Node>& nodes, int idx, std::string& out) {
  const Node& n = nodes[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case Node::Kind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      out += buf;
      break;
    }
    case Node::Kind::Ident:
      out += Bindings::names[static_cast<std::size_t>(n.slot)];
      break;
    case Node::Kind::Neg:
      out += "(-";
      print_node(nodes, n.a, out);
      out += ')';
      break;
    case Node::Kind::Call:
      out += kFunctions[static_cast<std::size_t>(n.fn)];
      out += '(';
      print_node(nodes, n.a, out);
      out += ')';
      break;
    case Node::Kind::Binary:
      out += '(';
      print_node(nodes, n.a, out);
      out += n.op;
      print_node(nodes, n.b, out);
      out += ')';
      break;
  }
}

}  // namespace

Expr Expr::parse(std::string_view src) {
  Parser parser(src);
  ParseResult result = parser.run();
  Expr e;
  e.impl_ = std::make_shared<const Impl>(
      Impl{std::move(result.nodes), result.root});
  return e;
}

double Expr::eval(const Bindings& env) const {
  if (!impl_) {
    throw Error("eval of an empty expression");
  }
  return eval_node(impl_->nodes, impl_->root, env);
}

double Expr::eval(const std::map<std::string, double>& bindings) const {
  Bindings env;
  for (const auto& [name, value] : bindings) {
    env.set(name, value);
  }
  return eval(env);
}

std::string Expr::pretty() const {
  if (!impl_) {
    return {};
  }
  std::string out;
  print_node(impl_->nodes, impl_->root, out);
  return out;
}

}  // namespace dhc
