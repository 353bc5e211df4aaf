#pragma once

#include "dhc/field.hpp"
#include "dhc/reduction.hpp"
#include "dhc/types.hpp"

namespace dhc {

enum class FdScheme { ImplicitEuler, CrankNicolson };

/// Grid parameters for the method-of-steps finite-difference solver. The
/// delay is snapped to an integer number of steps; the snap error
/// |tau - delay_steps * dt| is reported on the result.
struct FdConfig {
  int nx = 200;          // spatial intervals (>= 8)
  double dt = 1e-3;      // time step (> 0)
  FdScheme scheme = FdScheme::CrankNicolson;
};

struct FdResult {
  Field field;
  int delay_steps = 0;        // round(tau / dt), at least 1
  double tau_snap_error = 0;  // |tau - delay_steps * dt|
};

/// Marches the canonical problem to time T. Delayed terms (a2sq u_xx(t-tau)
/// and c2 u(t-tau)) are read from stored past slices (from the history for
/// t - tau <= 0) and treated explicitly; the current-time diffusion and
/// reaction are treated per the chosen scheme. Dirichlet rows are pinned to
/// the boundary data. Throws UnstableRun when the solution norm exceeds
/// 1e12 times the data norm.
FdResult solve_fd(const ReducedProblem& p, const ProblemData& data,
                  const SpaceTimeFn& source, const FdConfig& cfg, double T);

/// Max interior centered-difference residual of the canonical equation over
/// a sampled field. Rows whose time stencil straddles a multiple of tau are
/// skipped (the exact solution loses time smoothness there). Delayed values
/// at negative times are read from the history.
double residual_fd(const Field& field, const ReducedProblem& p,
                   const ProblemData& data, const SpaceTimeFn& source);

}  // namespace dhc
