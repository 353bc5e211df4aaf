#include <doctest.h>

#include <cmath>
#include <vector>

#include "dhc/errors.hpp"
#include "dhc/quadrature.hpp"

using namespace dhc;

TEST_CASE("polynomials and smooth integrands") {
  auto cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  CHECK(integrate(cubic, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));

  auto wave = [](double x) { return std::sin(10.0 * x); };
  const double exact = (1.0 - std::cos(20.0)) / 10.0;
  CHECK(integrate(wave, 0.0, 2.0) == doctest::Approx(exact).epsilon(1e-12));

  CHECK(integrate(wave, 2.0, 0.0) == doctest::Approx(-exact).epsilon(1e-12));
  CHECK(integrate(wave, 1.0, 1.0) == 0.0);
}

TEST_CASE("pre-splitting handles kinks and jumps") {
  auto kinked = [](double x) { return std::abs(x - 0.3); };
  const std::vector<double> breaks = {0.3};
  CHECK(integrate(kinked, 0.0, 1.0, breaks) ==
        doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-13));

  auto step = [](double x) { return x < 0.25 ? 1.0 : 3.0; };
  const std::vector<double> at_jump = {0.25};
  CHECK(integrate(step, 0.0, 1.0, at_jump) ==
        doctest::Approx(0.25 + 3.0 * 0.75).epsilon(1e-13));
}

TEST_CASE("unresolvable jump exhausts the refinement depth") {
  auto step = [](double x) { return x < 0.7071067811865476 ? 0.0 : 1.0; };
  CHECK_THROWS_AS(integrate(step, 0.0, 1.0), QuadratureNonConvergence);
}

TEST_CASE("non-finite integrands are reported as overflow") {
  auto bad = [](double x) { return 1e308 * std::exp(x); };
  CHECK_THROWS_AS(integrate(bad, 0.0, 10.0), OverflowError);
}
