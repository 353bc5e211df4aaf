#include "dhc/fd_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dhc/errors.hpp"

namespace dhc {

namespace {

// Constant-coefficient symmetric tridiagonal solve (Thomas algorithm with a
// reusable forward sweep).
class Tridiag {
 public:
  Tridiag(int n, double diag, double off) : off_(off), cp_(n), n_(n) {
    double d = diag;
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        d = diag - off * cp_[i - 1];
      }
      cp_[i] = off / d;
      inv_d_.push_back(1.0 / d);
    }
  }

  void solve(Eigen::VectorXd& rhs) const {
    rhs[0] *= inv_d_[0];
    for (int i = 1; i < n_; ++i) {
      rhs[i] = (rhs[i] - off_ * rhs[i - 1]) * inv_d_[i];
    }
    for (int i = n_ - 2; i >= 0; --i) {
      rhs[i] -= cp_[i] * rhs[i + 1];
    }
  }

 private:
  double off_;
  std::vector<double> cp_;
  std::vector<double> inv_d_;
  int n_;
};

double eval_or_zero(const SpaceTimeFn& f, double x, double t) {
  return f ? f(x, t) : 0.0;
}

double eval_or_zero(const TimeFn& f, double t) { return f ? f(t) : 0.0; }

}  // namespace

FdResult solve_fd(const ReducedProblem& p, const ProblemData& data,
                  const SpaceTimeFn& source, const FdConfig& cfg, double T) {
  p.validate();
  if (cfg.nx < 8) {
    throw std::invalid_argument("solve_fd: nx must be >= 8");
  }
  if (!(cfg.dt > 0.0)) {
    throw std::invalid_argument("solve_fd: dt must be positive");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("solve_fd: T must be positive");
  }

  const int nx = cfg.nx;
  const double h = p.length / nx;
  const double dt = cfg.dt;
  const int delay_steps = std::max<int>(1, std::lround(p.tau / dt));
  const int steps = std::max<int>(1, std::lround(T / dt));

  FdResult result;
  result.delay_steps = delay_steps;
  result.tau_snap_error = std::abs(p.tau - delay_steps * dt);

  Field& f = result.field;
  f.xs = Eigen::VectorXd::LinSpaced(nx + 1, 0.0, p.length);
  f.ts = Eigen::VectorXd::LinSpaced(steps + 1, 0.0, steps * dt);
  f.values.resize(nx + 1, steps + 1);

  double scale = 1e-300;  // running data norm for the divergence guard
  for (int i = 0; i <= nx; ++i) {
    f.values(i, 0) = eval_or_zero(data.history, f.xs[i], 0.0);
    scale = std::max(scale, std::abs(f.values(i, 0)));
  }
  f.values(0, 0) = eval_or_zero(data.bnd_left, 0.0);
  f.values(nx, 0) = eval_or_zero(data.bnd_right, 0.0);

  // delayed slice for target time index j (may reach into the history)
  Eigen::VectorXd hist_buf(nx + 1);
  auto delayed_slice = [&](int j) -> const Eigen::VectorXd& {
    const int jd = j - delay_steps;
    if (jd >= 0) {
      hist_buf = f.values.col(jd);
      return hist_buf;
    }
    const double sd = std::max(jd * dt, -p.tau);
    for (int i = 0; i <= nx; ++i) {
      hist_buf[i] = eval_or_zero(data.history, f.xs[i], sd);
    }
    return hist_buf;
  };

  const double r = p.a1sq / (h * h);
  const bool cn = cfg.scheme == FdScheme::CrankNicolson;
  const double w = cn ? 0.5 * dt : dt;  // implicit weight
  const Tridiag solver(nx - 1, 1.0 + w * (2.0 * r - p.c1), -w * r);

  Eigen::VectorXd rhs(nx - 1);
  auto lap = [&](const auto& v, int i) {
    return (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h);
  };

  for (int j = 1; j <= steps; ++j) {
    const double t_new = f.ts[j];
    const double mu1 = eval_or_zero(data.bnd_left, t_new);
    const double mu2 = eval_or_zero(data.bnd_right, t_new);
    const Eigen::VectorXd vd_new = delayed_slice(j);

    if (cn) {
      const Eigen::VectorXd vd_old = delayed_slice(j - 1);
      const double t_old = f.ts[j - 1];
      const auto u_old = f.values.col(j - 1);
      for (int i = 1; i < nx; ++i) {
        const double src_old = eval_or_zero(source, f.xs[i], t_old);
        const double src_new = eval_or_zero(source, f.xs[i], t_new);
        const double g_old =
            p.a2sq * lap(vd_old, i) + p.c2 * vd_old[i] + src_old;
        const double g_new =
            p.a2sq * lap(vd_new, i) + p.c2 * vd_new[i] + src_new;
        rhs[i - 1] = u_old[i] +
                     0.5 * dt * (p.a1sq * lap(u_old, i) + p.c1 * u_old[i]) +
                     0.5 * dt * (g_old + g_new);
        scale = std::max({scale, std::abs(src_old), std::abs(src_new)});
      }
    } else {
      const auto u_old = f.values.col(j - 1);
      for (int i = 1; i < nx; ++i) {
        const double src_new = eval_or_zero(source, f.xs[i], t_new);
        const double g_new =
            p.a2sq * lap(vd_new, i) + p.c2 * vd_new[i] + src_new;
        rhs[i - 1] = u_old[i] + dt * g_new;
        scale = std::max(scale, std::abs(src_new));
      }
    }
    rhs[0] += w * r * mu1;
    rhs[nx - 2] += w * r * mu2;
    solver.solve(rhs);

    f.values(0, j) = mu1;
    f.values(nx, j) = mu2;
    for (int i = 1; i < nx; ++i) {
      f.values(i, j) = rhs[i - 1];
    }

    scale = std::max({scale, std::abs(mu1), std::abs(mu2)});
    const double norm = f.values.col(j).cwiseAbs().maxCoeff();
    if (!std::isfinite(norm) || norm > 1e12 * scale) {
      std::ostringstream msg;
      msg << "solve_fd: solution norm " << norm << " exceeds 1e12 x data norm "
          << scale << " at t = " << t_new;
      throw UnstableRun(msg.str());
    }
  }
  return result;
}

double residual_fd(const Field& field, const ReducedProblem& p,
                   const ProblemData& data, const SpaceTimeFn& source) {
  field.validate();
  const Eigen::Index nx = field.xs.size();
  const Eigen::Index nt = field.ts.size();
  if (nx < 3 || nt < 3) {
    throw std::invalid_argument("residual_fd: field too small");
  }
  const double h = field.xs[1] - field.xs[0];
  const double dt = field.ts[1] - field.ts[0];

  Eigen::VectorXd delayed(nx);
  double worst = 0.0;
  for (Eigen::Index j = 1; j + 1 < nt; ++j) {
    const double t = field.ts[j];
    // skip rows whose centered time stencil straddles a delay knot
    const double to_knot =
        std::abs(t - std::round(t / p.tau) * p.tau);
    if (to_knot < 0.45 * dt && t > 0.5 * dt) {
      continue;
    }
    const double td = t - p.tau;
    if (td < field.ts[0]) {
      for (Eigen::Index i = 0; i < nx; ++i) {
        delayed[i] = eval_or_zero(data.history, field.xs[i],
                                  std::max(td, -p.tau));
      }
    } else {
      const double pos = (td - field.ts[0]) / dt;
      const Eigen::Index j0 =
          std::min<Eigen::Index>(static_cast<Eigen::Index>(pos), nt - 2);
      const double frac = pos - static_cast<double>(j0);
      if (frac < 1e-9) {
        delayed = field.values.col(j0);
      } else {
        delayed = (1.0 - frac) * field.values.col(j0) +
                  frac * field.values.col(j0 + 1);
      }
    }
    for (Eigen::Index i = 1; i + 1 < nx; ++i) {
      const double ut =
          (field.values(i, j + 1) - field.values(i, j - 1)) / (2.0 * dt);
      const double uxx = (field.values(i - 1, j) - 2.0 * field.values(i, j) +
                          field.values(i + 1, j)) /
                         (h * h);
      const double uxx_d =
          (delayed[i - 1] - 2.0 * delayed[i] + delayed[i + 1]) / (h * h);
      const double res = ut - p.a1sq * uxx - p.a2sq * uxx_d -
                         p.c1 * field.values(i, j) - p.c2 * delayed[i] -
                         eval_or_zero(source, field.xs[i], t);
      worst = std::max(worst, std::abs(res));
    }
  }
  return worst;
}

}  // namespace dhc
