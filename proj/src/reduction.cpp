#include "dhc/reduction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dhc/errors.hpp"

namespace dhc {

namespace {

double eval_or_zero(const SpaceTimeFn& f, double x, double t) {
  return f ? f(x, t) : 0.0;
}

double eval_or_zero(const TimeFn& f, double t) { return f ? f(t) : 0.0; }

}  // namespace

void ReducedProblem::validate() const {
  if (!(a1sq > 0.0)) {
    throw std::invalid_argument("ReducedProblem: a1sq must be positive");
  }
  if (!(a2sq >= 0.0)) {
    throw std::invalid_argument("ReducedProblem: a2sq must be nonnegative");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("ReducedProblem: tau must be positive");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("ReducedProblem: length must be positive");
  }
}

ReducedProblem reduce(const OriginalProblem& orig) {
  if (!(orig.a1 > 0.0)) {
    throw std::invalid_argument("reduce: a1 must be positive");
  }
  if (!(orig.a2 >= 0.0)) {
    throw std::invalid_argument("reduce: a2 must be nonnegative");
  }
  if (!(orig.tau > 0.0)) {
    throw std::invalid_argument("reduce: tau must be positive");
  }
  if (!(orig.length > 0.0)) {
    throw std::invalid_argument("reduce: length must be positive");
  }

  const double a1sq = orig.a1 * orig.a1;
  const double a2sq = orig.a2 * orig.a2;
  const double lhs = orig.b1 * a2sq;
  const double rhs = orig.b2 * a1sq;
  const double scale =
      std::max(std::abs(orig.b1) * a2sq, std::abs(orig.b2) * a1sq);
  if (std::abs(lhs - rhs) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "reduce: drift coefficients are not proportional (b1*a2^2 = " << lhs
        << ", b2*a1^2 = " << rhs << ")";
    throw ProportionalityViolation(msg.str());
  }

  ReducedProblem p;
  p.a1sq = a1sq;
  p.a2sq = a2sq;
  p.c1 = orig.d1 - orig.b1 * orig.b1 / (4.0 * a1sq);
  p.c2 = a2sq > 0.0 ? orig.d2 - orig.b2 * orig.b2 / (4.0 * a2sq) : orig.d2;
  p.tau = orig.tau;
  p.length = orig.length;
  p.mu = -orig.b1 / (2.0 * a1sq);
  return p;
}

ProblemData map_data(const OriginalProblem& orig, const SpaceTimeFn& psi,
                     const TimeFn& theta1, const TimeFn& theta2,
                     const SpaceTimeFn& g, const SpaceFn& target) {
  const ReducedProblem p = reduce(orig);
  const double mu = p.mu;
  const double l = orig.length;

  // original-side compatibility: psi must match the boundary traces
  const int samples = 64;
  for (int i = 0; i < samples; ++i) {
    const double s = -orig.tau + orig.tau * i / (samples - 1);
    const double left = eval_or_zero(psi, 0.0, s);
    const double right = eval_or_zero(psi, l, s);
    const double th1 = eval_or_zero(theta1, s);
    const double th2 = eval_or_zero(theta2, s);
    const double tol1 = 1e-8 * std::max({1.0, std::abs(left), std::abs(th1)});
    const double tol2 = 1e-8 * std::max({1.0, std::abs(right), std::abs(th2)});
    if (std::abs(left - th1) > tol1) {
      std::ostringstream msg;
      msg << "map_data: psi(0, " << s << ") = " << left
          << " != theta1 = " << th1;
      throw CompatibilityViolation(msg.str());
    }
    if (std::abs(right - th2) > tol2) {
      std::ostringstream msg;
      msg << "map_data: psi(" << l << ", " << s << ") = " << right
          << " != theta2 = " << th2;
      throw CompatibilityViolation(msg.str());
    }
  }

  ProblemData data;
  if (psi) {
    data.history = [mu, psi](double x, double s) {
      return std::exp(-mu * x) * psi(x, s);
    };
  }
  data.bnd_left = theta1;
  if (theta2) {
    const double scale2 = std::exp(-mu * l);
    data.bnd_right = [scale2, theta2](double t) { return scale2 * theta2(t); };
  }
  if (g) {
    data.forcing = [mu, g](double x, double t) {
      return std::exp(-mu * x) * g(x, t);
    };
  }
  if (target) {
    data.target = [mu, target](double x) {
      return std::exp(-mu * x) * target(x);
    };
  }
  return data;
}

SpaceTimeFn lift_solution(double mu, const SpaceTimeFn& u) {
  return [mu, u](double x, double t) {
    return std::exp(mu * x) * eval_or_zero(u, x, t);
  };
}

void check_data_compatibility(const ProblemData& data, double length,
                              double tau, int samples) {
  if (samples < 2) {
    throw std::invalid_argument("check_data_compatibility: samples >= 2");
  }
  for (int i = 0; i < samples; ++i) {
    const double s = -tau + tau * i / (samples - 1);
    const double left = eval_or_zero(data.history, 0.0, s);
    const double right = eval_or_zero(data.history, length, s);
    const double mu1 = eval_or_zero(data.bnd_left, s);
    const double mu2 = eval_or_zero(data.bnd_right, s);
    if (std::abs(left - mu1) >
        1e-8 * std::max({1.0, std::abs(left), std::abs(mu1)})) {
      std::ostringstream msg;
      msg << "history(0, " << s << ") = " << left
          << " != bnd_left = " << mu1;
      throw CompatibilityViolation(msg.str());
    }
    if (std::abs(right - mu2) >
        1e-8 * std::max({1.0, std::abs(right), std::abs(mu2)})) {
      std::ostringstream msg;
      msg << "history(" << length << ", " << s << ") = " << right
          << " != bnd_right = " << mu2;
      throw CompatibilityViolation(msg.str());
    }
  }
}

void check_target_compatibility(const ProblemData& data, double length,
                                double horizon) {
  if (!data.target) {
    return;
  }
  const double psi0 = data.target(0.0);
  const double psil = data.target(length);
  const double mu1 = eval_or_zero(data.bnd_left, horizon);
  const double mu2 = eval_or_zero(data.bnd_right, horizon);
  if (std::abs(psi0 - mu1) >
      1e-8 * std::max({1.0, std::abs(psi0), std::abs(mu1)})) {
    std::ostringstream msg;
    msg << "target(0) = " << psi0 << " != bnd_left(" << horizon
        << ") = " << mu1;
    throw CompatibilityViolation(msg.str());
  }
  if (std::abs(psil - mu2) >
      1e-8 * std::max({1.0, std::abs(psil), std::abs(mu2)})) {
    std::ostringstream msg;
    msg << "target(" << length << ") = " << psil << " != bnd_right("
        << horizon << ") = " << mu2;
    throw CompatibilityViolation(msg.str());
  }
}

}  // namespace dhc
