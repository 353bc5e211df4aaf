#pragma once

#include <vector>

#include "dhc/reduction.hpp"
#include "dhc/types.hpp"

namespace dhc {

/// Per-mode constants of the sine expansion:
///   big_l     = c1 - (pi n a1 / l)^2
///   raw_delay = c2 - (pi n a2 / l)^2   (coefficient of y_n(t - tau))
///   big_d     = raw_delay * e^{-big_l tau}
struct ModeConstants {
  double big_l = 0.0;
  double big_d = 0.0;
  double raw_delay = 0.0;
};

/// Throws OverflowError when e^{-big_l tau} leaves floating range while the
/// delay coefficient is nonzero; such a mode is numerically unusable.
ModeConstants mode_constants(const ReducedProblem& p, int n);

/// Sine coefficient (2/l) * integral_0^l g(xi) sin(pi n xi / l) dxi by
/// adaptive quadrature with one panel per sine arch.
double sine_coeff(const SpaceFn& g, double length, int n,
                  double abs_tol = 1e-11);

/// Exact sine coefficient of the affine boundary lift
/// L(x) = mu1 + (mu2 - mu1) x / l:  (2 / (pi n)) * (mu1 - (-1)^n mu2).
double lift_coeff(double mu1_val, double mu2_val, int n);

/// Source coefficient created by homogenizing the boundary lift:
///   M_n(t) = c1 m_n(t) + c2 m_n(t - tau) - m_n'(t),
/// with m_n(t) = lift_coeff(mu1(t), mu2(t), n) and the derivative taken by
/// central differences with step 1e-6 * max(1, |t|).
double source_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                    double t);

/// Coefficient of the homogenized history w = u - lift on [-tau, 0]:
///   Phi_n(s) = sine_coeff(history(., s)) - lift_coeff(mu1(s), mu2(s), n).
double history_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                     double s);

/// Full forcing coefficient F_n(t) = sine_coeff(f(., t)) + M_n(t).
double forcing_coeff(const ProblemData& data, const ReducedProblem& p, int n,
                     double t);

/// One mode of the homogenized solution: constants plus the mode's history
/// and forcing coefficient functions.
struct ModeState {
  int index = 1;
  double big_l = 0.0;
  double big_d = 0.0;
  double raw_delay = 0.0;
  TimeFn history_coeff;  // Phi_n on [-tau, 0]
  TimeFn forcing_coeff;  // F_n on [0, T]
};

ModeState make_mode_state(const ProblemData& data, const ReducedProblem& p,
                          int n);

/// Points {t - k tau, k >= 1} inside (a, b): the integration variable values
/// at which a delayed-exponential factor with argument shifted by t crosses
/// a knot. Shared by the mode solvers and the control verification.
std::vector<double> delay_knot_splits(double t, double tau, double a,
                                      double b);

/// Value at time t of the solution of
///   y'(t) = big_l y(t) + raw_delay y(t - tau) + F_n(t),  y = Phi_n on
/// [-tau, 0], through the delayed-exponential representation
///   y(t) = e^{big_l t} exp_tau(big_d, t - tau) Phi_n(0)
///        + big_d * int_{-tau}^0 e^{big_l (t-s)} exp_tau(big_d, t-2tau-s)
///          Phi_n(s) ds
///        + int_0^t e^{big_l (t-s)} exp_tau(big_d, t-tau-s) F_n(s) ds,
/// with quadrature split at the knots of the delayed exponential.
double mode_solve(const ModeState& ms, double tau, double t);

/// Independent oracle: integrates the same mode equation by the method of
/// steps with classical RK4 and cubic-Hermite dense output for the delayed
/// reads. Used only for verification.
double mode_solve_steps(const ModeState& ms, double tau, double t, double dt);

}  // namespace dhc
