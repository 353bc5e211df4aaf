#include <doctest.h>

#include <cmath>

#include "dhc/errors.hpp"
#include "dhc/fd_oracle.hpp"

using namespace dhc;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

// manufactured solution u*(x,t) = e^{-t}(1+t) sin(pi x / l) and the forcing
// that makes it solve the delayed equation
struct Manufactured {
  ReducedProblem p;

  double shape(double t) const { return std::exp(-t) * (1.0 + t); }
  double shape_dot(double t) const { return -t * std::exp(-t); }

  double value(double x, double t) const {
    return shape(t) * std::sin(kPi * x / p.length);
  }

  SpaceTimeFn forcing() const {
    const Manufactured self = *this;
    return [self](double x, double t) {
      const double w = kPi / self.p.length;
      const double sine = std::sin(w * x);
      return sine * (self.shape_dot(t) + self.p.a1sq * w * w * self.shape(t) +
                     self.p.a2sq * w * w * self.shape(t - self.p.tau) -
                     self.p.c1 * self.shape(t) -
                     self.p.c2 * self.shape(t - self.p.tau));
    };
  }

  ProblemData data() const {
    const Manufactured self = *this;
    ProblemData d;
    d.history = [self](double x, double s) { return self.value(x, s); };
    d.bnd_left = [](double) { return 0.0; };
    d.bnd_right = [](double) { return 0.0; };
    return d;
  }

  double max_error(const Field& field) const {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < field.ts.size(); ++j) {
      for (Eigen::Index i = 0; i < field.xs.size(); ++i) {
        worst = std::max(worst, std::abs(field.values(i, j) -
                                         value(field.xs[i], field.ts[j])));
      }
    }
    return worst;
  }
};

}  // namespace

TEST_CASE("zero data stay exactly zero") {
  const ReducedProblem p = basic_problem(1, 0.3, 0.2, -0.1, 0.5, 1);
  for (FdScheme scheme : {FdScheme::ImplicitEuler, FdScheme::CrankNicolson}) {
    const FdResult r = solve_fd(p, {}, {}, {16, 0.05, scheme}, 1.0);
    CHECK(r.field.values.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("delay snapping is reported") {
  const ReducedProblem p = basic_problem(1, 0, 0, 0, 0.5, 1);
  const FdResult r = solve_fd(p, {}, {}, {16, 0.15, FdScheme::ImplicitEuler},
                              0.6);
  CHECK(r.delay_steps == 3);
  CHECK(r.tau_snap_error == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("classical heat equation against the closed form") {
  const ReducedProblem p = basic_problem(1, 0, 0, 0, 0.5, kPi);
  ProblemData data;
  data.history = [](double x, double) { return std::sin(x); };
  data.bnd_left = [](double) { return 0.0; };
  data.bnd_right = [](double) { return 0.0; };
  const FdResult r =
      solve_fd(p, data, {}, {200, 1e-4, FdScheme::ImplicitEuler}, 1.0);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < r.field.ts.size(); ++j) {
    for (Eigen::Index i = 0; i < r.field.xs.size(); ++i) {
      const double exact =
          std::exp(-r.field.ts[j]) * std::sin(r.field.xs[i]);
      worst = std::max(worst, std::abs(r.field.values(i, j) - exact));
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("manufactured solution with both delay terms") {
  Manufactured m{basic_problem(0.8, 0.3, 0.2, -0.25, 0.5, 1.5)};
  const FdResult r = solve_fd(m.p, m.data(), m.forcing(),
                              {100, 0.0025, FdScheme::CrankNicolson}, 1.0);
  CHECK(m.max_error(r.field) <= 1e-3);
}

TEST_CASE("implicit Euler converges when the (h^2, dt) pair is halved") {
  Manufactured m{basic_problem(1, 0.25, 0.1, -0.2, 0.4, 1)};
  auto error_at = [&](int nx, double dt) {
    const FdResult r = solve_fd(m.p, m.data(), m.forcing(),
                                {nx, dt, FdScheme::ImplicitEuler}, 0.8);
    return m.max_error(r.field);
  };
  // nx grows by sqrt(2) so h^2 halves along with dt
  const double e1 = error_at(32, 0.02);
  const double e2 = error_at(45, 0.01);
  const double e3 = error_at(64, 0.005);
  CHECK(e1 / e2 >= 1.8);
  CHECK(e2 / e3 >= 1.8);
}

TEST_CASE("Crank-Nicolson gains at least 3.5x when h and dt halve") {
  Manufactured m{basic_problem(1, 0.25, 0.1, -0.2, 0.4, 1)};
  auto error_at = [&](int nx, double dt) {
    const FdResult r = solve_fd(m.p, m.data(), m.forcing(),
                                {nx, dt, FdScheme::CrankNicolson}, 0.8);
    return m.max_error(r.field);
  };
  const double e1 = error_at(32, 0.02);
  const double e2 = error_at(64, 0.01);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("boundary rows are pinned to the data") {
  const ReducedProblem p = basic_problem(1, 0.2, 0.0, 0.1, 0.5, 1);
  ProblemData data;
  data.bnd_left = [](double t) { return 0.25 * std::sin(3.0 * t); };
  data.bnd_right = [](double t) { return 1.0 / (1.0 + t); };
  data.history = [&](double x, double s) {
    return data.bnd_left(s) + (data.bnd_right(s) - data.bnd_left(s)) * x;
  };
  const FdResult r =
      solve_fd(p, data, {}, {32, 0.025, FdScheme::CrankNicolson}, 1.0);
  for (Eigen::Index j = 0; j < r.field.ts.size(); ++j) {
    CHECK(r.field.values(0, j) == data.bnd_left(r.field.ts[j]));
    CHECK(r.field.values(32, j) == data.bnd_right(r.field.ts[j]));
  }
}

TEST_CASE("perturbing the recent history cannot affect earlier times") {
  const double tau = 0.5;
  const double t0 = 0.4;
  const ReducedProblem p = basic_problem(1, 0.3, 0.0, 0.4, tau, 1);
  ProblemData data;
  data.bnd_left = [](double) { return 0.0; };
  data.bnd_right = [](double) { return 0.0; };
  data.history = [](double x, double s) {
    return std::sin(kPi * x) * (1.0 + s);
  };
  ProblemData perturbed = data;
  perturbed.history = [&, t0](double x, double s) {
    double bump = 0.0;
    if (s > t0 - tau && s < 0.0) {
      const double a = s - (t0 - tau);
      bump = 100.0 * a * a * s * s * std::sin(kPi * x);
    }
    return data.history(x, s) + bump;
  };
  const FdConfig cfg{16, 0.05, FdScheme::ImplicitEuler};
  const FdResult base = solve_fd(p, data, {}, cfg, 1.0);
  const FdResult other = solve_fd(p, perturbed, {}, cfg, 1.0);
  const int j0 = static_cast<int>(std::lround(t0 / cfg.dt));
  for (int j = 0; j <= j0; ++j) {
    for (Eigen::Index i = 0; i < base.field.xs.size(); ++i) {
      CHECK(base.field.values(i, j) == other.field.values(i, j));
    }
  }
  // and the perturbation does reach later times
  const Eigen::Index last = base.field.ts.size() - 1;
  CHECK((base.field.values.col(last).array() !=
         other.field.values.col(last).array())
            .any());
}

TEST_CASE("explicit delayed diffusion can destabilize a coarse run") {
  const ReducedProblem p = basic_problem(1, 25.0, 0.0, 0.0, 0.05, 1);
  ProblemData data;
  data.history = [](double x, double) { return std::sin(kPi * x); };
  data.bnd_left = [](double) { return 0.0; };
  data.bnd_right = [](double) { return 0.0; };
  CHECK_THROWS_AS(
      solve_fd(p, data, {}, {100, 0.01, FdScheme::ImplicitEuler}, 2.0),
      UnstableRun);
}

TEST_CASE("residual of a manufactured field matches the stencil order") {
  Manufactured m{basic_problem(1, 0.25, 0.1, -0.2, 0.4, 1)};
  auto sample_exact = [&](int nx, double dt, double T) {
    Field f;
    const int nt = static_cast<int>(std::lround(T / dt));
    f.xs = Eigen::VectorXd::LinSpaced(nx + 1, 0.0, m.p.length);
    f.ts = Eigen::VectorXd::LinSpaced(nt + 1, 0.0, T);
    f.values.resize(nx + 1, nt + 1);
    for (int j = 0; j <= nt; ++j) {
      for (int i = 0; i <= nx; ++i) {
        f.values(i, j) = m.value(f.xs[i], f.ts[j]);
      }
    }
    return f;
  };
  const SpaceTimeFn f_star = m.forcing();
  const double r1 = residual_fd(sample_exact(20, 0.02, 0.8), m.p, m.data(),
                                f_star);
  const double r2 = residual_fd(sample_exact(40, 0.01, 0.8), m.p, m.data(),
                                f_star);
  CHECK(r1 / r2 >= 3.0);  // both contributions are second order here

  Field zero;
  zero.xs = Eigen::VectorXd::LinSpaced(9, 0.0, 1.0);
  zero.ts = Eigen::VectorXd::LinSpaced(9, 0.0, 0.8);
  zero.values = Eigen::MatrixXd::Zero(9, 9);
  CHECK(residual_fd(zero, m.p, {}, {}) == 0.0);
}
