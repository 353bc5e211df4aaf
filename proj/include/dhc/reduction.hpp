#pragma once

#include "dhc/types.hpp"

namespace dhc {

/// Drifted problem
///   v_t = a1^2 v_xx + a2^2 v_xx(t - tau) + b1 v_x + b2 v_x(t - tau)
///       + d1 v + d2 v(t - tau) + g
/// on [0, length] with Dirichlet data. The drift coefficients must be
/// proportional (b1 * a2^2 == b2 * a1^2) for a single substitution exponent
/// to exist; with a2 == 0 this forces b2 == 0.
struct OriginalProblem {
  double a1 = 1.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double tau = 1.0;
  double length = 1.0;
};

/// Canonical (drift-free) form
///   u_t = a1sq u_xx + a2sq u_xx(t - tau) + c1 u + c2 u(t - tau) + f.
/// mu is the exponent of the substitution v = e^{mu x} u that produced it
/// (0 when the problem was posed in canonical form directly).
struct ReducedProblem {
  double a1sq = 1.0;
  double a2sq = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double tau = 1.0;
  double length = 1.0;
  double mu = 0.0;

  /// Throws std::invalid_argument unless a1sq > 0, a2sq >= 0, tau > 0,
  /// length > 0.
  void validate() const;
};

/// Problem data as evaluable functions. history is phi(x, s) on
/// [0, length] x [-tau, 0]; bnd_left/bnd_right are the Dirichlet traces on
/// [-tau, T]; forcing is f(x, t); target is the optional terminal state
/// (empty function = no target).
struct ProblemData {
  SpaceTimeFn history;
  TimeFn bnd_left;
  TimeFn bnd_right;
  SpaceTimeFn forcing;
  SpaceFn target;
};

/// Canonical coefficients of the drifted problem:
/// mu = -b1 / (2 a1^2), c1 = d1 - b1^2/(4 a1^2), c2 = d2 - b2^2/(4 a2^2)
/// (c2 = d2 when a2 == 0). Throws ProportionalityViolation when
/// b1 a2^2 != b2 a1^2 beyond relative 1e-12.
ReducedProblem reduce(const OriginalProblem& orig);

/// Maps original-side data (psi, theta1, theta2, g[, target]) to canonical
/// data: phi = e^{-mu x} psi, mu1 = theta1, mu2 = e^{-mu l} theta2,
/// f = e^{-mu x} g. Checks psi/theta compatibility on a sample grid first
/// and throws CompatibilityViolation naming the failing sample.
ProblemData map_data(const OriginalProblem& orig, const SpaceTimeFn& psi,
                     const TimeFn& theta1, const TimeFn& theta2,
                     const SpaceTimeFn& g, const SpaceFn& target = {});

/// v(x, t) = e^{mu x} u(x, t); inverse of the data mapping.
SpaceTimeFn lift_solution(double mu, const SpaceTimeFn& u);

/// Checks phi(0, s) == bnd_left(s) and phi(length, s) == bnd_right(s) on a
/// uniform sample of [-tau, 0]; throws CompatibilityViolation with the
/// failing location. Tolerance is 1e-8 against the local data scale.
void check_data_compatibility(const ProblemData& data, double length,
                              double tau, int samples = 64);

/// Checks target(0) == bnd_left(horizon) and target(length) ==
/// bnd_right(horizon); no-op when no target is present.
void check_target_compatibility(const ProblemData& data, double length,
                                double horizon);

}  // namespace dhc
