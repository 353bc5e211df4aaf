#include "dhc/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dhc/delayed_exp.hpp"
#include "dhc/errors.hpp"
#include "dhc/quadrature.hpp"

namespace dhc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double x) { return x * x; }

}  // namespace

ModeConstants mode_constants(const ReducedProblem& p, int n) {
  if (n < 1) {
    throw std::invalid_argument("mode_constants: n must be >= 1");
  }
  p.validate();
  const double freq_sq = sq(kPi * n / p.length);
  ModeConstants mc;
  mc.big_l = p.c1 - freq_sq * p.a1sq;
  mc.raw_delay = p.c2 - freq_sq * p.a2sq;
  if (mc.raw_delay == 0.0) {
    mc.big_d = 0.0;
  } else {
    mc.big_d = mc.raw_delay * std::exp(-mc.big_l * p.tau);
    if (!std::isfinite(mc.big_d)) {
      throw OverflowError(
          "mode_constants: e^{-L_n tau} overflows for mode " +
              std::to_string(n) + "; the mode is numerically unusable",
          n);
    }
  }
  return mc;
}

double sine_coeff(const SpaceFn& g, double length, int n, double abs_tol) {
  if (n < 1) {
    throw std::invalid_argument("sine_coeff: n must be >= 1");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("sine_coeff: length must be positive");
  }
  if (!g) {
    return 0.0;
  }
  const double w = kPi * n / length;
  auto integrand = [&](double xi) { return g(xi) * std::sin(w * xi); };
  std::vector<double> arches;
  arches.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    arches.push_back(length * k / n);
  }
  QuadratureOptions opt;
  opt.abs_tol = abs_tol * length / 2.0;
  return (2.0 / length) * integrate(integrand, 0.0, length, arches, opt);
}

double lift_coeff(double mu1_val, double mu2_val, int n) {
  if (n < 1) {
    throw std::invalid_argument("lift_coeff: n must be >= 1");
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  return 2.0 / (kPi * n) * (mu1_val - sign * mu2_val);
}

double source_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                    double t) {
  auto m = [&](double u) {
    const double mu1 = data.bnd_left ? data.bnd_left(u) : 0.0;
    const double mu2 = data.bnd_right ? data.bnd_right(u) : 0.0;
    return lift_coeff(mu1, mu2, n);
  };
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const double mdot = (m(t + h) - m(t - h)) / (2.0 * h);
  return p.c1 * m(t) + p.c2 * m(t - p.tau) - mdot;
}

double history_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                     double s) {
  double phi_n = 0.0;
  if (data.history) {
    auto slice = [&](double xi) { return data.history(xi, s); };
    phi_n = sine_coeff(slice, p.length, n);
  }
  const double mu1 = data.bnd_left ? data.bnd_left(s) : 0.0;
  const double mu2 = data.bnd_right ? data.bnd_right(s) : 0.0;
  return phi_n - lift_coeff(mu1, mu2, n);
}

double forcing_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                     double t) {
  double f_n = 0.0;
  if (data.forcing) {
    auto slice = [&](double xi) { return data.forcing(xi, t); };
    f_n = sine_coeff(slice, p.length, n);
  }
  return f_n + source_coeff(data, p, n, t);
}

ModeState make_mode_state(const ProblemData& data, const ReducedProblem& p,
                          int n) {
  const ModeConstants mc = mode_constants(p, n);
  ModeState ms;
  ms.index = n;
  ms.big_l = mc.big_l;
  ms.big_d = mc.big_d;
  ms.raw_delay = mc.raw_delay;
  ms.history_coeff = [data, p, n](double s) {
    return history_coeff(data, p, n, s);
  };
  ms.forcing_coeff = [data, p, n](double t) {
    return forcing_coeff(data, p, n, t);
  };
  return ms;
}

std::vector<double> delay_knot_splits(double t, double tau, double a,
                                      double b) {
  std::vector<double> out;
  for (int k = 1;; ++k) {
    const double s = t - k * tau;
    if (s <= a) {
      break;
    }
    if (s < b) {
      out.push_back(s);
    }
  }
  return out;
}

double mode_solve(const ModeState& ms, double tau, double t) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("mode_solve: tau must be positive");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("mode_solve: t must be nonnegative");
  }
  const DelayedExp dex{ms.big_d, tau};
  const double phi0 = ms.history_coeff ? ms.history_coeff(0.0) : 0.0;
  double value = std::exp(ms.big_l * t) * eval(dex, t - tau) * phi0;
  if (ms.big_d != 0.0 && ms.history_coeff) {
    auto integrand = [&](double s) {
      return std::exp(ms.big_l * (t - s)) * eval(dex, t - 2.0 * tau - s) *
             ms.history_coeff(s);
    };
    value += ms.big_d * integrate(integrand, -tau, 0.0,
                                  delay_knot_splits(t, tau, -tau, 0.0));
  }
  if (t > 0.0 && ms.forcing_coeff) {
    auto integrand = [&](double s) {
      return std::exp(ms.big_l * (t - s)) * eval(dex, t - tau - s) *
             ms.forcing_coeff(s);
    };
    // forcing coefficients carry finite-difference and nested-quadrature
    // jitter; refinement below that level cannot converge
    QuadratureOptions opt;
    opt.noise_rel = 1e-9;
    value += integrate(integrand, 0.0, t, delay_knot_splits(t, tau, 0.0, t),
                       opt);
  }
  if (!std::isfinite(value)) {
    throw OverflowError("mode_solve: non-finite value for mode " +
                            std::to_string(ms.index),
                        ms.index);
  }
  return value;
}

double mode_solve_steps(const ModeState& ms, double tau, double t,
                        double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("mode_solve_steps: dt must be positive");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("mode_solve_steps: tau must be positive");
  }
  auto history = [&](double s) {
    return ms.history_coeff ? ms.history_coeff(std::max(s, -tau)) : 0.0;
  };
  if (t <= 0.0) {
    return history(t);
  }

  const int per_segment = std::max<int>(1, std::lround(tau / dt));
  const double h = tau / per_segment;

  std::vector<double> y;
  std::vector<double> yd;  // stored derivatives for dense output
  y.reserve(static_cast<std::size_t>(t / h) + 2);
  yd.reserve(y.capacity());

  // dense read of the already-integrated trajectory (cubic Hermite per cell)
  auto past = [&](double u) -> double {
    if (u <= 0.0) {
      return history(u);
    }
    const double pos = u / h;
    int j = static_cast<int>(pos);
    const int top = static_cast<int>(y.size()) - 1;
    if (j >= top) {
      j = top - 1;
    }
    const double theta = pos - j;
    const double y0 = y[j];
    const double y1 = y[j + 1];
    const double d0 = h * yd[j];
    const double d1 = h * yd[j + 1];
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
  };

  auto rhs = [&](double time, double value) {
    const double forced =
        ms.forcing_coeff ? ms.forcing_coeff(time) : 0.0;
    return ms.big_l * value + ms.raw_delay * past(time - tau) + forced;
  };

  auto rk4_step = [&](double time, double value, double step) {
    const double k1 = rhs(time, value);
    const double k2 = rhs(time + 0.5 * step, value + 0.5 * step * k1);
    const double k3 = rhs(time + 0.5 * step, value + 0.5 * step * k2);
    const double k4 = rhs(time + step, value + step * k3);
    return value + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  y.push_back(history(0.0));
  yd.push_back(rhs(0.0, y[0]));

  const int full_steps = static_cast<int>(std::floor(t / h + 1e-12));
  for (int i = 0; i < full_steps; ++i) {
    const double time = i * h;
    y.push_back(rk4_step(time, y.back(), h));
    yd.push_back(rhs((i + 1) * h, y.back()));
  }
  const double remainder = t - full_steps * h;
  if (remainder > 1e-12 * tau) {
    return rk4_step(full_steps * h, y.back(), remainder);
  }
  return y.back();
}

}  // namespace dhc
