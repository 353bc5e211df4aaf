#pragma once

namespace dhc {

/// Delayed exponential: the piecewise-polynomial fundamental solution of
/// y'(t) = rate * y(t - delay) with unit history. It is 0 for t < -delay,
/// 1 on [-delay, 0), and on [(k-1)*delay, k*delay) equals the degree-k
/// polynomial
///     sum_{j=0..k} rate^j * (t - (j-1)*delay)^j / j! .
/// The newly added term vanishes at each knot, so the function is continuous
/// on [-delay, inf).
struct DelayedExp {
  double rate = 0.0;   // b
  double delay = 1.0;  // tau, strictly positive
};

/// Sentinel returned by segment_index for t < -delay.
inline constexpr int kBeforeHistory = -1;

/// Index k of the segment [(k-1)*delay, k*delay) containing t; k = 0 is the
/// unit-history segment [-delay, 0), kBeforeHistory anything earlier.
int segment_index(double delay, double t);

/// Value of the delayed exponential at t. Total on the reals; overflows to
/// infinity rather than throwing for large |rate * t|.
double eval(const DelayedExp& fn, double t);

/// Definite integral of eval over [-delay, t_final - delay] for t_final >= 0,
/// via the closed form (eval(t_final) - 1) / rate. Rates below
/// 1e-12 / delay in magnitude use the analytic limit t_final instead, since
/// eval is identically 1 on the integration range as rate -> 0.
double integral(const DelayedExp& fn, double t_final);

}  // namespace dhc
