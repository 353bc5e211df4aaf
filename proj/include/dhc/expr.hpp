#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace dhc {

/// Fixed-slot environment for expression evaluation. The name set is closed:
/// variables x, t, s and constants pi, tau, l, T. pi is preset; the problem
/// constants are injected from the scenario configuration.
struct Bindings {
  static constexpr std::array<std::string_view, 7> names = {
      "x", "t", "s", "pi", "tau", "l", "T"};

  std::array<std::optional<double>, 7> values{};

  Bindings();

  /// Slot index of a name, or -1 if the name is not in the set.
  static int slot_of(std::string_view name);

  /// Binds name = v; throws UnknownIdentifier for names outside the set.
  Bindings& set(std::string_view name, double v);
};

/// Immutable arithmetic expression over the Bindings name set with
/// + - * / ^, unary minus, parentheses and sin, cos, exp, sqrt, abs.
/// Precedence, loosest first: + -, then * /, then unary minus, then ^
/// (right-associative; the exponent may itself carry a unary minus).
class Expr {
 public:
  Expr() = default;

  /// Parses source text; throws SyntaxError / UnknownIdentifier with the
  /// byte offset of the offense.
  static Expr parse(std::string_view src);

  /// Evaluates against an environment; throws UnboundVariable for unset
  /// slots and DomainError for real-arithmetic domain violations.
  double eval(const Bindings& env) const;
  double eval(const std::map<std::string, double>& bindings) const;
  double operator()(const Bindings& env) const { return eval(env); }

  /// Fully parenthesized serialization; parsing it back yields an expression
  /// with identical evaluation.
  std::string pretty() const;

  bool empty() const { return impl_ == nullptr; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace dhc
