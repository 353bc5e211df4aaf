#pragma once

#include <Eigen/Core>

#include "dhc/fd_oracle.hpp"
#include "dhc/reduction.hpp"
#include "dhc/types.hpp"

namespace dhc {

/// Distributed control in sine-series form: U(x, t) =
/// sum_n U_n(t) sin(pi n x / l) with U_n(t) = e^{-L_n (T - t)} A_n.
/// Immutable after synthesis. Each amplitude satisfies the per-mode moment
/// equation A_n (exp_tau(D_n, T) - 1) / D_n = R_n (A_n T = R_n when
/// D_n = 0).
struct ControlSeries {
  int truncation = 0;
  double horizon = 0.0;
  double tau = 0.0;
  double length = 0.0;
  Eigen::VectorXd big_l;       // L_n, index n-1
  Eigen::VectorXd big_d;       // D_n
  Eigen::VectorXd residuals;   // R_n(T)
  Eigen::VectorXd amplitudes;  // A_n(T)
};

/// Contribution of the initial history to mode n at time t:
///   s1n(t) = e^{L_n t} exp_tau(D_n, t - tau) Phi_n(0)
///          + D_n int_{-tau}^0 e^{L_n (t-s)} exp_tau(D_n, t-2tau-s)
///            Phi_n(s) ds.
/// Equals mode_solve with a vanishing forcing coefficient.
double s1n(const ProblemData& data, const ReducedProblem& p, int n, double t);

/// Contribution of the boundary-lift source to mode n at time t:
///   s2n(t) = int_0^t e^{L_n (t-s)} exp_tau(D_n, t-tau-s) M_n(s) ds.
double s2n(const ProblemData& data, const ReducedProblem& p, int n, double t);

/// Residual moment the control must supply:
///   R_n(T) = Psi_n - s1n(T) - s2n(T) - m_n(T).
/// Throws MissingTarget when the data carry no target state.
double residual(const ProblemData& data, const ReducedProblem& p, int n,
                double T);

/// Builds the control series for modes 1..N at horizon T. Throws
/// SingularMode(n) when the moment kernel integrates to (numerically) zero
/// for a mode with D_n != 0, and ControlBlowup(n) when the mode's
/// coefficient overflows at t = 0; the caller must then lower N or smooth
/// the target.
ControlSeries synthesize(const ProblemData& data, const ReducedProblem& p,
                         int N, double T);

/// U_n(t) = e^{-L_n (T - t)} A_n.
double control_coeff(const ControlSeries& cs, int n, double t);

/// Assembled U(x, t), suitable as the forcing of a solve.
SpaceTimeFn control_function(const ControlSeries& cs);

/// Relative defect |LHS - R_n| / (1 + |R_n|) of the moment equation,
/// evaluated by knot-splitting quadrature after the change of variables
/// u = T - tau - s.
double verify_moment(const ControlSeries& cs, const ReducedProblem& p, int n);

struct SteeringReport {
  double series_error = 0.0;  // max_x |u(x, T) - target(x)|, series solver
  double fd_error = 0.0;      // same, finite-difference oracle
};

/// Solves the problem with the control as forcing through both the series
/// representation and the finite-difference oracle, and reports the
/// terminal mismatch of each.
SteeringReport verify_steering(const ControlSeries& cs,
                               const ProblemData& data,
                               const ReducedProblem& p, const FdConfig& cfg,
                               int sample_nx = 101);

}  // namespace dhc
