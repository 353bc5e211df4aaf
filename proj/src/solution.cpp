#include "dhc/solution.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dhc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double lift_value(const ProblemData& data, double length, double x,
                  double t) {
  const double mu1 = data.bnd_left ? data.bnd_left(t) : 0.0;
  const double mu2 = data.bnd_right ? data.bnd_right(t) : 0.0;
  return mu1 + (mu2 - mu1) * x / length;
}

}  // namespace

SeriesSolution make_series_solution(ProblemData data, ReducedProblem problem,
                                    int truncation, double horizon) {
  problem.validate();
  if (truncation < 1) {
    throw std::invalid_argument("make_series_solution: truncation >= 1");
  }
  if (!(horizon >= 0.0)) {
    throw std::invalid_argument("make_series_solution: horizon >= 0");
  }
  SeriesSolution sol;
  sol.truncation = truncation;
  sol.horizon = horizon;
  sol.problem = problem;
  sol.data = std::move(data);
  sol.modes.reserve(static_cast<std::size_t>(truncation));
  for (int n = 1; n <= truncation; ++n) {
    sol.modes.push_back(make_mode_state(sol.data, sol.problem, n));
  }
  return sol;
}

Eigen::VectorXd modal_values(const SeriesSolution& sol, double t) {
  Eigen::VectorXd y(sol.truncation);
  for (int n = 1; n <= sol.truncation; ++n) {
    y[n - 1] = mode_solve(sol.modes[static_cast<std::size_t>(n - 1)],
                          sol.problem.tau, t);
  }
  return y;
}

double evaluate(const SeriesSolution& sol, double x, double t) {
  const Eigen::VectorXd y = modal_values(sol, t);
  double value = lift_value(sol.data, sol.problem.length, x, t);
  for (int n = 1; n <= sol.truncation; ++n) {
    value += y[n - 1] * std::sin(kPi * n * x / sol.problem.length);
  }
  return value;
}

Field sample(const SeriesSolution& sol, int nx, int nt) {
  if (nx < 2 || nt < 2) {
    throw std::invalid_argument("sample: nx and nt must be >= 2");
  }
  const double l = sol.problem.length;
  Field field;
  field.xs = Eigen::VectorXd::LinSpaced(nx, 0.0, l);
  field.ts = Eigen::VectorXd::LinSpaced(nt, 0.0, sol.horizon);

  Eigen::MatrixXd modal(sol.truncation, nt);
  for (int j = 0; j < nt; ++j) {
    modal.col(j) = modal_values(sol, field.ts[j]);
  }
  Eigen::MatrixXd sines(nx, sol.truncation);
  for (int i = 0; i < nx; ++i) {
    for (int n = 1; n <= sol.truncation; ++n) {
      sines(i, n - 1) = std::sin(kPi * n * field.xs[i] / l);
    }
  }
  field.values = sines * modal;
  for (int j = 0; j < nt; ++j) {
    const double t = field.ts[j];
    const double mu1 = sol.data.bnd_left ? sol.data.bnd_left(t) : 0.0;
    const double mu2 = sol.data.bnd_right ? sol.data.bnd_right(t) : 0.0;
    for (int i = 0; i < nx; ++i) {
      field.values(i, j) += mu1 + (mu2 - mu1) * field.xs[i] / l;
    }
    field.values(0, j) = mu1;       // boundary rows are exact
    field.values(nx - 1, j) = mu2;
  }
  return field;
}

namespace {

struct SequenceFit {
  double exponent = std::numeric_limits<double>::infinity();
  bool vanishing = true;
  bool conclusive = true;
};

// Decay exponent of q_n ~ n^{-p} by least squares on log-log samples.
// Entries below the noise floor are dropped; an all-floor sequence counts
// as vanishing (infinitely fast decay).
SequenceFit fit_decay(const std::vector<int>& ns,
                      const std::vector<double>& qs, double floor) {
  std::vector<double> log_n;
  std::vector<double> log_q;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (qs[i] > floor) {
      log_n.push_back(std::log(static_cast<double>(ns[i])));
      log_q.push_back(std::log(qs[i]));
    }
  }
  SequenceFit fit;
  if (log_n.empty()) {
    return fit;  // vanishing
  }
  fit.vanishing = false;
  if (log_n.size() < 3) {
    fit.conclusive = false;
    fit.exponent = 0.0;
    return fit;
  }
  Eigen::MatrixXd design(log_n.size(), 2);
  Eigen::VectorXd target(log_n.size());
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = log_n[i];
    target[static_cast<Eigen::Index>(i)] = log_q[i];
  }
  const Eigen::Vector2d coeffs =
      design.colPivHouseholderQr().solve(target);
  fit.exponent = -coeffs[1];
  return fit;
}

}  // namespace

std::string RegularityReport::summary() const {
  std::ostringstream out;
  out << "regularity check: m=" << m << " delta=" << delta << '\n';
  for (const auto& e : entries) {
    out << "  " << e.quantity << ": threshold=" << e.threshold;
    if (!e.conclusive) {
      out << " exponent=inconclusive verdict=warn";
    } else if (std::isinf(e.exponent)) {
      out << " exponent=vanishing verdict=pass";
    } else {
      out << " exponent=" << e.exponent
          << (e.pass ? " verdict=pass" : " verdict=warn");
    }
    out << '\n';
  }
  out << "overall: " << (pass ? "pass" : "warn") << '\n';
  return out.str();
}

RegularityReport regularity_check(const ProblemData& data,
                                  const ReducedProblem& p, double T, int N,
                                  double delta) {
  if (N < 8) {
    throw std::invalid_argument("regularity_check: N must be >= 8");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("regularity_check: T must be positive");
  }
  RegularityReport report;
  report.m = std::max<int>(1, static_cast<int>(std::ceil(T / p.tau - 1e-12)));
  report.delta = delta;

  std::vector<int> ns;
  for (int n = N / 2; n <= N; ++n) {
    ns.push_back(n);
  }

  // rough data scale so the noise floors track the data's magnitude
  double scale = 1.0;
  for (int i = 0; i <= 8; ++i) {
    const double x = p.length * i / 8.0;
    const double s = -p.tau * i / 8.0;
    if (data.history) scale = std::max(scale, std::abs(data.history(x, s)));
    if (data.bnd_left) scale = std::max(scale, std::abs(data.bnd_left(s)));
    if (data.bnd_right) scale = std::max(scale, std::abs(data.bnd_right(s)));
  }

  const int s_samples = 17;
  const double hs = p.tau / (s_samples - 1);

  std::vector<double> phi0(ns.size(), 0.0);
  std::vector<double> phi1(ns.size(), 0.0);
  std::vector<double> phi2(ns.size(), 0.0);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::vector<double> values(s_samples);
    for (int i = 0; i < s_samples; ++i) {
      values[i] = history_coeff(data, p, ns[k], -p.tau + i * hs);
    }
    for (int i = 0; i < s_samples; ++i) {
      phi0[k] = std::max(phi0[k], std::abs(values[i]));
    }
    for (int i = 1; i + 1 < s_samples; ++i) {
      phi1[k] = std::max(
          phi1[k], std::abs((values[i + 1] - values[i - 1]) / (2.0 * hs)));
      phi2[k] = std::max(phi2[k],
                         std::abs((values[i + 1] - 2.0 * values[i] +
                                   values[i - 1]) /
                                  (hs * hs)));
    }
  }

  auto add_entry = [&](const std::string& name, double threshold,
                       const std::vector<double>& qs, double floor) {
    const SequenceFit fit = fit_decay(ns, qs, floor * scale);
    RegularityReport::Entry e;
    e.quantity = name;
    e.threshold = threshold;
    e.exponent = fit.exponent;
    e.conclusive = fit.conclusive;
    e.pass = fit.vanishing || (fit.conclusive && fit.exponent > threshold);
    report.entries.push_back(e);
  };

  const double base = 2.0 * report.m + delta;
  add_entry("history coefficient", base + 5.0, phi0, 1e-12);
  add_entry("history coefficient d/ds", base + 3.0, phi1, 1e-10);
  add_entry("history coefficient d2/ds2", base + 1.0, phi2, 1e-8);

  const int t_samples = 9;
  for (int k = 1; k <= report.m; ++k) {
    const double lo = (k - 1) * p.tau;
    const double hi = std::min(static_cast<double>(k) * p.tau, T);
    const double ht = (hi - lo) / (t_samples - 1);
    std::vector<double> f0(ns.size(), 0.0);
    std::vector<double> f1(ns.size(), 0.0);
    for (std::size_t q = 0; q < ns.size(); ++q) {
      std::vector<double> values(t_samples);
      for (int i = 0; i < t_samples; ++i) {
        values[i] = forcing_coeff(data, p, ns[q], lo + i * ht);
      }
      for (int i = 0; i < t_samples; ++i) {
        f0[q] = std::max(f0[q], std::abs(values[i]));
      }
      for (int i = 1; i + 1 < t_samples; ++i) {
        f1[q] = std::max(
            f1[q], std::abs((values[i + 1] - values[i - 1]) / (2.0 * ht)));
      }
    }
    const double window = 2.0 * (report.m - k) + delta;
    std::ostringstream name;
    name << "forcing coefficient, window " << k;
    add_entry(name.str(), window + 3.0, f0, 1e-12);
    add_entry(name.str() + " d/dt", window + 1.0, f1, 1e-10);
  }

  report.pass = true;
  for (const auto& e : report.entries) {
    report.pass = report.pass && e.pass;
  }
  return report;
}

}  // namespace dhc
