#pragma once

#include <functional>
#include <span>

namespace dhc {

struct QuadratureOptions {
  double abs_tol = 1e-11;
  int max_depth = 30;
  // For integrands carrying numerical noise (finite-difference derivatives,
  // nested adaptive results): accept a panel once its error estimate falls
  // below noise_rel * max|f| * panel_length, since refinement cannot improve
  // past the integrand's own jitter. 0 disables the floor.
  double noise_rel = 0.0;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Intervals are bisected until the local error estimate meets the budget;
/// throws QuadratureNonConvergence past max_depth and OverflowError on
/// non-finite panel results.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

/// Same, but pre-split at the given interior breakpoints (kinks or jumps of
/// the integrand). Breakpoints outside (a, b) are ignored.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints,
                 const QuadratureOptions& opt = {});

}  // namespace dhc
