#include "dhc/delayed_exp.hpp"

#include <cmath>
#include <stdexcept>

#include "dhc/errors.hpp"

namespace dhc {

int segment_index(double delay, double t) {
  if (!(delay > 0.0)) {
    throw std::invalid_argument("segment_index: delay must be positive");
  }
  if (t < -delay) {
    return kBeforeHistory;
  }
  const double seg = std::floor(t / delay);
  if (seg >= 1e7) {
    throw OverflowError("segment_index: argument too many delays ahead");
  }
  return static_cast<int>(seg) + 1;
}

double eval(const DelayedExp& fn, double t) {
  if (fn.rate == 0.0) {
    return t < -fn.delay ? 0.0 : 1.0;
  }
  const int k = segment_index(fn.delay, t);
  if (k == kBeforeHistory) {
    return 0.0;
  }
  double sum = 1.0;  // j = 0 term
  for (int j = 1; j <= k; ++j) {
    const double u = fn.rate * (t - (j - 1) * fn.delay);
    // u^j / j! accumulated as a product of u/i factors; avoids inf/inf
    double term = 1.0;
    for (int i = 1; i <= j; ++i) {
      term *= u / i;
    }
    sum += term;
  }
  return sum;
}

double integral(const DelayedExp& fn, double t_final) {
  if (!(t_final >= 0.0)) {
    throw std::invalid_argument("integral: t_final must be nonnegative");
  }
  if (std::abs(fn.rate) < 1e-12 / fn.delay) {
    return t_final;
  }
  return (eval(fn, t_final) - 1.0) / fn.rate;
}

}  // namespace dhc
