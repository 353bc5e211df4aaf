#include "dhc/control.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dhc/delayed_exp.hpp"
#include "dhc/errors.hpp"
#include "dhc/quadrature.hpp"
#include "dhc/solution.hpp"
#include "dhc/spectral.hpp"

namespace dhc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double s1n(const ProblemData& data, const ReducedProblem& p, int n,
           double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("s1n: t must be nonnegative");
  }
  const ModeConstants mc = mode_constants(p, n);
  const DelayedExp dex{mc.big_d, p.tau};
  double value = std::exp(mc.big_l * t) * eval(dex, t - p.tau) *
                 history_coeff(data, p, n, 0.0);
  if (mc.big_d != 0.0) {
    auto integrand = [&](double s) {
      return std::exp(mc.big_l * (t - s)) *
             eval(dex, t - 2.0 * p.tau - s) * history_coeff(data, p, n, s);
    };
    value += mc.big_d * integrate(integrand, -p.tau, 0.0,
                                  delay_knot_splits(t, p.tau, -p.tau, 0.0));
  }
  if (!std::isfinite(value)) {
    throw OverflowError("s1n: non-finite value for mode " + std::to_string(n),
                        n);
  }
  return value;
}

double s2n(const ProblemData& data, const ReducedProblem& p, int n,
           double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("s2n: t must be nonnegative");
  }
  if (t == 0.0) {
    return 0.0;
  }
  const ModeConstants mc = mode_constants(p, n);
  const DelayedExp dex{mc.big_d, p.tau};
  auto integrand = [&](double s) {
    return std::exp(mc.big_l * (t - s)) * eval(dex, t - p.tau - s) *
           source_coeff(data, p, n, s);
  };
  // the source coefficient's finite-difference derivative carries jitter
  QuadratureOptions opt;
  opt.noise_rel = 1e-9;
  const double value =
      integrate(integrand, 0.0, t, delay_knot_splits(t, p.tau, 0.0, t), opt);
  if (!std::isfinite(value)) {
    throw OverflowError("s2n: non-finite value for mode " + std::to_string(n),
                        n);
  }
  return value;
}

double residual(const ProblemData& data, const ReducedProblem& p, int n,
                double T) {
  if (!data.target) {
    throw MissingTarget("residual: problem data carry no target state");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("residual: T must be positive");
  }
  const double psi_n = sine_coeff(data.target, p.length, n);
  const double mu1 = data.bnd_left ? data.bnd_left(T) : 0.0;
  const double mu2 = data.bnd_right ? data.bnd_right(T) : 0.0;
  return psi_n - s1n(data, p, n, T) - s2n(data, p, n, T) -
         lift_coeff(mu1, mu2, n);
}

ControlSeries synthesize(const ProblemData& data, const ReducedProblem& p,
                         int N, double T) {
  if (N < 1) {
    throw std::invalid_argument("synthesize: N must be >= 1");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("synthesize: T must be positive");
  }
  if (!data.target) {
    throw MissingTarget("synthesize: problem data carry no target state");
  }
  ControlSeries cs;
  cs.truncation = N;
  cs.horizon = T;
  cs.tau = p.tau;
  cs.length = p.length;
  cs.big_l.resize(N);
  cs.big_d.resize(N);
  cs.residuals.resize(N);
  cs.amplitudes.resize(N);

  for (int n = 1; n <= N; ++n) {
    const ModeConstants mc = mode_constants(p, n);
    const double r_n = residual(data, p, n, T);
    double a_n = 0.0;
    if (std::abs(mc.big_d) < 1e-12 / p.tau) {
      a_n = r_n / T;  // analytic limit of the moment equation as D -> 0
    } else {
      const double at_horizon = eval(DelayedExp{mc.big_d, p.tau}, T);
      const double denom = at_horizon - 1.0;
      if (std::abs(denom) < 1e-12 * (1.0 + std::abs(at_horizon))) {
        throw SingularMode(
            "synthesize: moment kernel integrates to zero for mode " +
                std::to_string(n) + " at horizon " + std::to_string(T),
            n);
      }
      a_n = r_n * mc.big_d / denom;
    }
    if (!std::isfinite(a_n)) {
      throw ControlBlowup("synthesize: amplitude overflow for mode " +
                              std::to_string(n),
                          n);
    }
    if (a_n != 0.0 && !std::isfinite(std::exp(-mc.big_l * T) * a_n)) {
      throw ControlBlowup(
          "synthesize: control coefficient overflows at t = 0 for mode " +
              std::to_string(n) + "; lower the truncation or smooth the target",
          n);
    }
    cs.big_l[n - 1] = mc.big_l;
    cs.big_d[n - 1] = mc.big_d;
    cs.residuals[n - 1] = r_n;
    cs.amplitudes[n - 1] = a_n;
  }
  return cs;
}

double control_coeff(const ControlSeries& cs, int n, double t) {
  if (n < 1 || n > cs.truncation) {
    throw std::invalid_argument("control_coeff: mode index out of range");
  }
  const double a_n = cs.amplitudes[n - 1];
  if (a_n == 0.0) {
    return 0.0;
  }
  return std::exp(-cs.big_l[n - 1] * (cs.horizon - t)) * a_n;
}

SpaceTimeFn control_function(const ControlSeries& cs) {
  return [cs](double x, double t) {
    double value = 0.0;
    for (int n = 1; n <= cs.truncation; ++n) {
      value += control_coeff(cs, n, t) * std::sin(kPi * n * x / cs.length);
    }
    return value;
  };
}

double verify_moment(const ControlSeries& cs, const ReducedProblem& p,
                     int n) {
  if (n < 1 || n > cs.truncation) {
    throw std::invalid_argument("verify_moment: mode index out of range");
  }
  const double tau = p.tau;
  const double T = cs.horizon;
  const double l_n = cs.big_l[n - 1];
  const DelayedExp dex{cs.big_d[n - 1], tau};
  // after u = T - tau - s the kernel knots sit at multiples of tau
  auto integrand = [&](double u) {
    return std::exp(l_n * (tau + u)) * eval(dex, u) *
           control_coeff(cs, n, T - tau - u);
  };
  std::vector<double> knots;
  for (int k = 0; k * tau < T - tau; ++k) {
    knots.push_back(k * tau);
  }
  const double lhs = integrate(integrand, -tau, T - tau, knots);
  const double r_n = cs.residuals[n - 1];
  return std::abs(lhs - r_n) / (1.0 + std::abs(r_n));
}

SteeringReport verify_steering(const ControlSeries& cs,
                               const ProblemData& data,
                               const ReducedProblem& p, const FdConfig& cfg,
                               int sample_nx) {
  if (sample_nx < 2) {
    throw std::invalid_argument("verify_steering: sample_nx must be >= 2");
  }
  if (!data.target) {
    throw MissingTarget("verify_steering: problem data carry no target state");
  }
  const SpaceTimeFn steer = control_function(cs);
  ProblemData steered = data;
  steered.forcing = steer;

  SteeringReport report;

  const SeriesSolution sol =
      make_series_solution(steered, p, cs.truncation, cs.horizon);
  const Eigen::VectorXd terminal = modal_values(sol, cs.horizon);
  const double mu1 = data.bnd_left ? data.bnd_left(cs.horizon) : 0.0;
  const double mu2 = data.bnd_right ? data.bnd_right(cs.horizon) : 0.0;
  for (int i = 0; i < sample_nx; ++i) {
    const double x = p.length * i / (sample_nx - 1);
    double u = mu1 + (mu2 - mu1) * x / p.length;
    for (int n = 1; n <= cs.truncation; ++n) {
      u += terminal[n - 1] * std::sin(kPi * n * x / p.length);
    }
    report.series_error =
        std::max(report.series_error, std::abs(u - data.target(x)));
  }

  const FdResult fd = solve_fd(p, steered, steer, cfg, cs.horizon);
  const Eigen::Index last = fd.field.ts.size() - 1;
  for (Eigen::Index i = 0; i < fd.field.xs.size(); ++i) {
    report.fd_error =
        std::max(report.fd_error, std::abs(fd.field.values(i, last) -
                                           data.target(fd.field.xs[i])));
  }
  return report;
}

}  // namespace dhc
