#include "dhc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "dhc/errors.hpp"

namespace dhc {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae.
constexpr std::array<double, 8> kNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights, matching kNodes[1], kNodes[3], kNodes[5], kNodes[7].
constexpr std::array<double, 4> kGaussW = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double value;
  double error;
  double f_max;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  double f_max = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    const double xi = kNodes[i];
    double f_hi = f(mid + half * xi);
    f_max = std::max(f_max, std::abs(f_hi));
    if (xi != 0.0) {
      const double f_lo = f(mid - half * xi);
      f_max = std::max(f_max, std::abs(f_lo));
      f_hi += f_lo;
    }
    kronrod += kKronrodW[i] * f_hi;
    if (i % 2 == 1) {
      // odd indices (including the center node) form the embedded Gauss-7 rule
      gauss += kGaussW[i / 2] * f_hi;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss), f_max};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, const QuadratureOptions& opt) {
  const Panel p = gk15(f, a, b);
  if (!std::isfinite(p.value)) {
    throw OverflowError("integrate: non-finite integrand panel");
  }
  if (p.error <= tol || p.error <= 5e-15 * std::abs(p.value) ||
      (opt.noise_rel > 0.0 &&
       p.error <= opt.noise_rel * p.f_max * (b - a))) {
    return p.value;
  }
  if (depth >= opt.max_depth) {
    throw QuadratureNonConvergence(
        "integrate: max refinement depth reached without meeting tolerance");
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1, opt) +
         adapt(f, mid, b, 0.5 * tol, depth + 1, opt);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (a == b) {
    return 0.0;
  }
  if (a > b) {
    return -integrate(f, b, a, opt);
  }
  return adapt(f, a, b, opt.abs_tol, 0, opt);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints,
                 const QuadratureOptions& opt) {
  if (a == b) {
    return 0.0;
  }
  if (a > b) {
    return -integrate(f, b, a, breakpoints, opt);
  }
  const double eps = 1e-14 * (std::abs(a) + std::abs(b) + 1.0);
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breakpoints) {
    if (x > a + eps && x < b - eps) {
      cuts.push_back(x);
    }
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  QuadratureOptions sub = opt;
  sub.abs_tol = opt.abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] > eps) {
      total += adapt(f, cuts[i], cuts[i + 1], sub.abs_tol, 0, sub);
    }
  }
  return total;
}

}  // namespace dhc
