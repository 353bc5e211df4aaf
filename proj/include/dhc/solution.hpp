#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "dhc/field.hpp"
#include "dhc/reduction.hpp"
#include "dhc/spectral.hpp"

namespace dhc {

/// Truncated sine-series solution: homogenized modal sum plus the affine
/// boundary lift. Immutable after construction; modes may be evaluated
/// concurrently.
struct SeriesSolution {
  int truncation = 1;
  double horizon = 1.0;
  ReducedProblem problem;
  ProblemData data;
  std::vector<ModeState> modes;  // modes[k] is mode k+1
};

SeriesSolution make_series_solution(ProblemData data, ReducedProblem problem,
                                    int truncation, double horizon);

/// Modal values y_n(t) for n = 1..truncation. Each entry is one mode_solve;
/// grid evaluations should reuse this per time instead of calling evaluate
/// pointwise.
Eigen::VectorXd modal_values(const SeriesSolution& sol, double t);

/// u(x, t) = sum_n y_n(t) sin(pi n x / l) + mu1(t) + (mu2(t) - mu1(t)) x / l.
double evaluate(const SeriesSolution& sol, double x, double t);

/// Uniform-grid evaluation over [0, l] x [0, horizon]; the boundary rows are
/// set to the boundary data exactly.
Field sample(const SeriesSolution& sol, int nx, int nt);

/// Decay-rate heuristic for classical-solution regularity. For m =
/// ceil(T/tau) the history coefficient family must decay faster than
/// n^-(2m+5+delta) (its s-derivatives faster than n^-(2m+3+delta) and
/// n^-(2m+1+delta)), and the forcing coefficients on the k-th delay window
/// faster than n^-(2(m-k)+3+delta) (derivative n^-(2(m-k)+1+delta)).
/// Exponents are measured by log-log regression over n = N/2..N; sequences
/// at the numerical noise floor count as vanishing and pass.
struct RegularityReport {
  struct Entry {
    std::string quantity;
    double threshold = 0.0;
    double exponent = 0.0;   // measured decay exponent (+inf if vanishing)
    bool conclusive = true;  // false = too few usable points -> warn
    bool pass = false;
  };
  int m = 1;
  double delta = 0.0;
  std::vector<Entry> entries;
  bool pass = false;  // all entries conclusive and passing

  std::string summary() const;
};

RegularityReport regularity_check(const ProblemData& data,
                                  const ReducedProblem& p, double T, int N,
                                  double delta);

}  // namespace dhc
