#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "dhc/errors.hpp"
#include "dhc/expr.hpp"

using namespace dhc;

TEST_CASE("precedence and associativity") {
  CHECK(Expr::parse("2+3*4").eval(Bindings{}) == 14.0);
  CHECK(Expr::parse("7").eval(Bindings{}) == 7.0);
  CHECK(Expr::parse("1-2-3").eval(Bindings{}) == -4.0);
  CHECK(Expr::parse("6/3/2").eval(Bindings{}) == 1.0);
  CHECK(Expr::parse("2^3^2").eval(Bindings{}) == 512.0);
  CHECK(Expr::parse("-2^2").eval(Bindings{}) == -4.0);
  CHECK(Expr::parse("2^-1").eval(Bindings{}) == 0.5);
  CHECK(Expr::parse("(1+2)*(3+4)").eval(Bindings{}) == 21.0);
  CHECK(Expr::parse("1.5e2").eval(Bindings{}) == 150.0);
}

TEST_CASE("variables, constants and functions") {
  Bindings env;
  env.set("x", 1.0);
  CHECK(Expr::parse("sin(pi*x/2)").eval(env) == doctest::Approx(1.0));
  CHECK(Expr::parse("x^2").eval(Bindings{}.set("x", 3.0)) == 9.0);

  Bindings xt;
  xt.set("x", 1.0).set("t", 0.5);
  CHECK(Expr::parse("exp(-t)*sin(x)").eval(xt) ==
        doctest::Approx(std::exp(-0.5) * std::sin(1.0)).epsilon(1e-15));

  std::map<std::string, double> m{{"x", 2.0}};
  CHECK(Expr::parse("sqrt(abs(-x))").eval(m) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(Expr::parse("2+"), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("(1+2"), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("foo+1"), UnknownIdentifier);
  CHECK_THROWS_AS(Expr::parse("sin 3"), SyntaxError);
  CHECK_THROWS_AS(Expr::parse(""), SyntaxError);
  try {
    Expr::parse("1 + bogus");
    FAIL("expected UnknownIdentifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(Expr::parse("1/(x-1)").eval(Bindings{}.set("x", 1.0)),
                  DomainError);
  CHECK_THROWS_AS(Expr::parse("sqrt(0-2)").eval(Bindings{}), DomainError);
  CHECK_THROWS_AS(Expr::parse("(0-2)^0.5").eval(Bindings{}), DomainError);
  CHECK_THROWS_AS(Expr::parse("x+1").eval(Bindings{}), UnboundVariable);
}

namespace {

// random expression tree rendered as text, for the round-trip property
std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_real_distribution<double> leaf(0.1, 4.0);
  switch (pick(rng)) {
    case 0: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", leaf(rng));
      return buf;
    }
    case 1:
      return rng() % 2 ? "x" : "t";
    case 2:
      return "(" + random_expr(rng, depth - 1) + "+" +
             random_expr(rng, depth - 1) + ")";
    case 3:
      return "(" + random_expr(rng, depth - 1) + "*" +
             random_expr(rng, depth - 1) + ")";
    case 4:
      return "(-" + random_expr(rng, depth - 1) + ")";
    case 5:
      return "sin(" + random_expr(rng, depth - 1) + ")";
    default:
      return "(" + random_expr(rng, depth - 1) + "/(4+" +
             random_expr(rng, depth - 1) + "))";
  }
}

}  // namespace

TEST_CASE("pretty-print round trip evaluates identically") {
  std::mt19937 rng(20260808);
  std::uniform_real_distribution<double> bind(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string source = random_expr(rng, 3);
    const Expr original = Expr::parse(source);
    const Expr reparsed = Expr::parse(original.pretty());
    Bindings env;
    env.set("x", bind(rng)).set("t", bind(rng));
    const double a = original.eval(env);
    const double b = reparsed.eval(env);
    CHECK(std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)));
  }
}
