#include <doctest.h>

#include <cmath>
#include <random>

#include "dhc/delayed_exp.hpp"
#include "dhc/errors.hpp"
#include "dhc/reduction.hpp"
#include "dhc/spectral.hpp"

using namespace dhc;

namespace {

constexpr double kPi = 3.14159265358979323846;

ProblemData zero_boundary_data(SpaceTimeFn history) {
  ProblemData data;
  data.history = std::move(history);
  data.bnd_left = [](double) { return 0.0; };
  data.bnd_right = [](double) { return 0.0; };
  return data;
}

ReducedProblem basic_problem(double a1sq, double a2sq, double c1, double c2,
                             double tau, double length) {
  ReducedProblem p;
  p.a1sq = a1sq;
  p.a2sq = a2sq;
  p.c1 = c1;
  p.c2 = c2;
  p.tau = tau;
  p.length = length;
  return p;
}

}  // namespace

TEST_CASE("mode constants") {
  SUBCASE("frequency shift of the reaction coefficient") {
    const auto mc = mode_constants(basic_problem(1, 0, 0, 0, 1, kPi), 2);
    CHECK(mc.big_l == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(mc.raw_delay == 0.0);
    CHECK(mc.big_d == 0.0);
  }
  SUBCASE("no delayed diffusion or reaction") {
    const auto mc = mode_constants(basic_problem(2, 0, 0.5, 0, 1, 1), 3);
    CHECK(mc.raw_delay == 0.0);
    CHECK(mc.big_d == 0.0);
  }
  SUBCASE("delay coefficient carries the exponential factor") {
    const auto mc = mode_constants(basic_problem(1, 1, 0, 0, 0.1, kPi), 1);
    CHECK(mc.big_l == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(mc.raw_delay == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(mc.big_d == doctest::Approx(-std::exp(0.1)).epsilon(1e-13));
  }
  SUBCASE("monotone decay of big_l in the mode index") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      // ranges keep e^{-L_12 tau} representable
      const ReducedProblem p =
          basic_problem(0.2 + unif(rng), unif(rng), unif(rng) - 0.5,
                        unif(rng) - 0.5, 0.2 + 0.3 * unif(rng),
                        1.5 + 1.5 * unif(rng));
      for (int n = 1; n <= 11; ++n) {
        CHECK(mode_constants(p, n + 1).big_l < mode_constants(p, n).big_l);
      }
    }
  }
  SUBCASE("overflowing exponential factor is reported") {
    const ReducedProblem p = basic_problem(1, 0, 0, 1, 1, kPi / 1000);
    CHECK_THROWS_AS(mode_constants(p, 1), OverflowError);
  }
}

TEST_CASE("sine coefficients") {
  SUBCASE("orthonormality under the 2/l weight") {
    const double l = 1.3;
    for (int k = 1; k <= 12; ++k) {
      for (int n = 1; n <= 12; ++n) {
        auto g = [&](double xi) { return std::sin(kPi * k * xi / l); };
        const double expected = (k == n) ? 1.0 : 0.0;
        CHECK(std::abs(sine_coeff(g, l, n) - expected) <= 1e-10);
      }
    }
  }
  SUBCASE("constant function") {
    auto one = [](double) { return 1.0; };
    CHECK(sine_coeff(one, 1.0, 1) ==
          doctest::Approx(4.0 / kPi).epsilon(1e-12));
    CHECK(std::abs(sine_coeff(one, 1.0, 2)) <= 1e-12);
  }
  SUBCASE("linear ramp") {
    auto ramp = [](double xi) { return xi; };
    CHECK(sine_coeff(ramp, 1.0, 3) ==
          doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-12));
  }
}

TEST_CASE("lift coefficients") {
  CHECK(lift_coeff(1.0, 1.0, 2) == 0.0);
  CHECK(lift_coeff(1.0, 1.0, 1) == doctest::Approx(4.0 / kPi).epsilon(1e-15));
  CHECK(lift_coeff(0.0, 1.0, 1) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  // closed form equals the quadrature coefficient of the affine lift
  const double l = 2.2;
  const double mu1 = 0.7;
  const double mu2 = -0.4;
  auto lift = [&](double xi) { return mu1 + (mu2 - mu1) * xi / l; };
  for (int n = 1; n <= 20; ++n) {
    CHECK(std::abs(lift_coeff(mu1, mu2, n) - sine_coeff(lift, l, n)) <=
          1e-10);
  }
}

TEST_CASE("boundary source coefficients") {
  SUBCASE("time-constant equal boundaries with zero reaction vanish") {
    ProblemData data;
    data.bnd_left = [](double) { return 3.0; };
    data.bnd_right = [](double) { return 3.0; };
    const ReducedProblem p = basic_problem(1, 0, 0, 0, 1, 1);
    for (int n = 1; n <= 5; ++n) {
      for (double t : {0.0, 0.5, 2.0}) {
        CHECK(std::abs(source_coeff(data, p, n, t)) <= 1e-12);
      }
    }
  }
  SUBCASE("linear left boundary with plain reaction") {
    ProblemData data;
    data.bnd_left = [](double t) { return t; };
    data.bnd_right = [](double) { return 0.0; };
    const ReducedProblem p = basic_problem(1, 0, 1, 0, 1, 1);
    for (double t : {0.2, 1.0, 1.7}) {
      CHECK(source_coeff(data, p, 1, t) ==
            doctest::Approx(2.0 / kPi * (t - 1.0)).epsilon(1e-9));
    }
  }
  SUBCASE("delayed reaction reads the shifted boundary") {
    ProblemData data;
    data.bnd_left = [](double t) { return std::exp(t); };
    data.bnd_right = [](double) { return 0.0; };
    const ReducedProblem p = basic_problem(1, 0, 0, 1, 1, 1);
    CHECK(source_coeff(data, p, 1, 1.0) ==
          doctest::Approx(2.0 / kPi * (1.0 - std::exp(1.0))).epsilon(1e-9));
  }
}

TEST_CASE("history coefficients subtract the lift") {
  const ReducedProblem p = basic_problem(1, 0, 0, 0, 0.5, 1);
  SUBCASE("history equal to the lift has zero homogenized coefficients") {
    ProblemData data;
    data.bnd_left = [](double s) { return 1.0 + s; };
    data.bnd_right = [](double s) { return 2.0 * s; };
    data.history = [](double x, double s) {
      return (1.0 + s) + (2.0 * s - (1.0 + s)) * x;
    };
    for (int n = 1; n <= 6; ++n) {
      for (double s : {-0.5, -0.2, 0.0}) {
        CHECK(std::abs(history_coeff(data, p, n, s)) <= 1e-10);
      }
    }
  }
  SUBCASE("single sine mode") {
    const ProblemData data = zero_boundary_data(
        [](double x, double) { return std::sin(kPi * x); });
    CHECK(history_coeff(data, p, 1, -0.3) == doctest::Approx(1.0));
    CHECK(std::abs(history_coeff(data, p, 2, -0.3)) <= 1e-10);
  }
  SUBCASE("separable decay in s") {
    const ProblemData data = zero_boundary_data([](double x, double s) {
      return std::exp(s) * std::sin(kPi * x);
    });
    CHECK(history_coeff(data, p, 1, -0.5) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
  }
}

TEST_CASE("forcing coefficients") {
  const ReducedProblem p = basic_problem(1, 0, 0, 0, 1, 1);
  SUBCASE("all-zero input") {
    ProblemData data;
    data.bnd_left = [](double) { return 2.0; };
    data.bnd_right = [](double) { return 2.0; };
    for (int n = 1; n <= 4; ++n) {
      CHECK(std::abs(forcing_coeff(data, p, n, 0.7)) <= 1e-12);
    }
  }
  SUBCASE("single mode forcing") {
    ProblemData data;
    data.forcing = [](double x, double) { return std::sin(kPi * x); };
    CHECK(forcing_coeff(data, p, 1, 0.4) == doctest::Approx(1.0));
    CHECK(std::abs(forcing_coeff(data, p, 2, 0.4)) <= 1e-10);
  }
  SUBCASE("parabolic profile with linear growth") {
    ProblemData data;
    data.forcing = [](double x, double t) { return t * x * (1.0 - x); };
    for (double t : {0.0, 0.7, 1.9}) {
      CHECK(forcing_coeff(data, p, 1, t) ==
            doctest::Approx(t * 8.0 / (kPi * kPi * kPi)).epsilon(1e-10));
    }
  }
}

TEST_CASE("mode_solve closed cases") {
  SUBCASE("pure delay equation reduces to the delayed exponential") {
    ModeState ms;
    ms.big_l = 0.0;
    ms.raw_delay = 2.0;
    ms.big_d = 2.0;
    ms.history_coeff = [](double) { return 1.0; };
    const double tau = 1.0;
    for (double t : {0.0, 0.6, 1.5, 2.3}) {
      CHECK(mode_solve(ms, tau, t) ==
            doctest::Approx(eval(DelayedExp{2.0, tau}, t)).epsilon(1e-10));
    }
    // cross-check against the independent steps integrator
    CHECK(mode_solve(ms, tau, 1.5) ==
          doctest::Approx(mode_solve_steps(ms, tau, 1.5, 5e-4))
              .epsilon(1e-8));
  }
  SUBCASE("no delay coefficient gives classical decay") {
    ModeState ms;
    ms.big_l = -1.7;
    ms.raw_delay = 0.0;
    ms.big_d = 0.0;
    ms.history_coeff = [](double) { return 0.8; };
    for (double t : {0.0, 0.4, 1.1, 2.9}) {
      CHECK(mode_solve(ms, 0.5, t) ==
            doctest::Approx(0.8 * std::exp(-1.7 * t)).epsilon(1e-12));
      CHECK(mode_solve_steps(ms, 0.5, t, 1e-3) ==
            doctest::Approx(0.8 * std::exp(-1.7 * t)).epsilon(1e-8));
    }
  }
  SUBCASE("initial value is the history at zero") {
    ModeState ms;
    ms.big_l = -0.9;
    ms.raw_delay = 1.3;
    ms.big_d = 1.3 * std::exp(0.9 * 0.7);
    ms.history_coeff = [](double s) { return 1.0 + 0.5 * s; };
    ms.forcing_coeff = [](double t) { return std::cos(t); };
    CHECK(mode_solve(ms, 0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mode_solve agrees with the steps oracle on random problems") {
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double tau = trial % 2 == 0 ? 0.4 : 1.0;
    ModeState ms;
    ms.index = 1 + trial % 6;
    ms.big_l = -4.0 * unif(rng) + 0.5;
    ms.raw_delay = -3.0 * unif(rng) + 1.5;
    ms.big_d = ms.raw_delay * std::exp(-ms.big_l * tau);
    const double alpha = unif(rng);
    const double beta = unif(rng) - 0.5;
    const double gamma = unif(rng);
    ms.history_coeff = [=](double s) {
      return alpha + beta * s + gamma * std::sin(2.0 * s);
    };
    const double p0 = unif(rng) - 0.5;
    const double q0 = unif(rng);
    ms.forcing_coeff = [=](double t) { return p0 + q0 * std::cos(3.0 * t); };
    for (double factor : {0.5, 1.7, 2.6}) {
      const double t = factor * tau;
      const double reference = mode_solve_steps(ms, tau, t, tau / 2000.0);
      const double value = mode_solve(ms, tau, t);
      CHECK(std::abs(value - reference) <=
            1e-6 * std::max(std::abs(reference), 1e-6));
    }
  }
}

TEST_CASE("mode_solve is continuous across the delay knots") {
  ModeState ms;
  ms.big_l = -1.2;
  ms.raw_delay = 0.9;
  const double tau = 0.6;
  ms.big_d = ms.raw_delay * std::exp(-ms.big_l * tau);
  ms.history_coeff = [](double s) { return 1.0 + 0.3 * s; };
  ms.forcing_coeff = [](double t) { return 0.4 * std::sin(t); };
  for (int k = 1; k <= 3; ++k) {
    const double knot = k * tau;
    const double eps = 1e-10;
    CHECK(std::abs(mode_solve(ms, tau, knot + eps) -
                   mode_solve(ms, tau, knot - eps)) <= 1e-8);
  }
}

TEST_CASE("mode state ties the delay coefficient to the constants") {
  const ReducedProblem p = basic_problem(1, 0.3, 0.2, -0.4, 0.5, kPi);
  const ProblemData data = zero_boundary_data(
      [](double x, double) { return std::sin(x); });
  for (int n = 1; n <= 6; ++n) {
    const ModeState ms = make_mode_state(data, p, n);
    CHECK(ms.index == n);
    const double expected = ms.raw_delay * std::exp(-ms.big_l * p.tau);
    CHECK(std::abs(ms.big_d - expected) <=
          1e-13 * std::max(1.0, std::abs(expected)));
  }
}
