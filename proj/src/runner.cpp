#include "dhc/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dhc/control.hpp"
#include "dhc/delayed_exp.hpp"
#include "dhc/errors.hpp"
#include "dhc/fd_oracle.hpp"
#include "dhc/field.hpp"
#include "dhc/solution.hpp"
#include "dhc/spectral.hpp"

namespace dhc {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

Bindings make_constants(double tau, double length, double horizon) {
  Bindings env;
  env.set("tau", tau).set("l", length).set("T", horizon);
  return env;
}

SpaceTimeFn history_fn(const Expr& e, const Bindings& consts) {
  return [e, consts](double x, double s) {
    Bindings env = consts;
    env.set("x", x).set("s", s);
    return e.eval(env);
  };
}

TimeFn boundary_fn(const Expr& e, const Bindings& consts) {
  return [e, consts](double t) {
    Bindings env = consts;
    env.set("t", t);
    return e.eval(env);
  };
}

SpaceTimeFn forcing_fn(const Expr& e, const Bindings& consts) {
  return [e, consts](double x, double t) {
    Bindings env = consts;
    env.set("x", x).set("t", t);
    return e.eval(env);
  };
}

SpaceFn target_fn(const Expr& e, const Bindings& consts) {
  return [e, consts](double x) {
    Bindings env = consts;
    env.set("x", x);
    return e.eval(env);
  };
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  return out;
}

void lift_field_in_place(Field& field, double mu) {
  if (mu == 0.0) {
    return;
  }
  for (Eigen::Index i = 0; i < field.xs.size(); ++i) {
    const double factor = std::exp(mu * field.xs[i]);
    field.values.row(i) *= factor;
  }
}

}  // namespace

ScenarioRuntime build_runtime(const ScenarioConfig& cfg,
                              const RunOptions& opt) {
  ScenarioRuntime rt;
  rt.horizon = cfg.horizon;
  rt.modes = opt.modes.value_or(cfg.modes);
  if (rt.modes < 1) {
    throw ConfigError("modes must be >= 1");
  }
  rt.delta = cfg.delta;
  rt.fd = cfg.fd;
  rt.sample_nx = cfg.sample_nx;
  rt.sample_nt = cfg.sample_nt;

  const Bindings consts =
      make_constants(cfg.tau, cfg.length, cfg.horizon);
  const Expr history = Expr::parse(cfg.history);
  const Expr bnd_left = Expr::parse(cfg.bnd_left);
  const Expr bnd_right = Expr::parse(cfg.bnd_right);
  const Expr forcing = Expr::parse(cfg.forcing);
  Expr target;
  if (cfg.has_target) {
    target = Expr::parse(cfg.target);
  }

  if (cfg.has_original) {
    OriginalProblem orig = cfg.original;
    orig.tau = cfg.tau;
    orig.length = cfg.length;
    rt.reduced = reduce(orig);
    rt.mu = rt.reduced.mu;
    rt.data = map_data(orig, history_fn(history, consts),
                       boundary_fn(bnd_left, consts),
                       boundary_fn(bnd_right, consts),
                       forcing_fn(forcing, consts),
                       cfg.has_target ? target_fn(target, consts) : SpaceFn{});
  } else {
    rt.reduced.a1sq = cfg.a1sq;
    rt.reduced.a2sq = cfg.a2sq;
    rt.reduced.c1 = cfg.c1;
    rt.reduced.c2 = cfg.c2;
    rt.reduced.tau = cfg.tau;
    rt.reduced.length = cfg.length;
    rt.reduced.mu = 0.0;
    rt.reduced.validate();
    rt.mu = 0.0;
    rt.data.history = history_fn(history, consts);
    rt.data.bnd_left = boundary_fn(bnd_left, consts);
    rt.data.bnd_right = boundary_fn(bnd_right, consts);
    rt.data.forcing = forcing_fn(forcing, consts);
    if (cfg.has_target) {
      rt.data.target = target_fn(target, consts);
    }
    check_data_compatibility(rt.data, cfg.length, cfg.tau);
  }
  if (cfg.has_target) {
    check_target_compatibility(rt.data, cfg.length, cfg.horizon);
  }
  return rt;
}

fs::path resolve_out_dir(const ScenarioConfig& cfg, const RunOptions& opt) {
  fs::path dir;
  if (opt.out_dir) {
    dir = *opt.out_dir;
  } else if (!cfg.out_dir.empty()) {
    dir = cfg.out_dir;
  } else if (const char* env = std::getenv("DHC_OUT_DIR")) {
    dir = env;
  } else {
    dir = ".";
  }
  fs::create_directories(dir);
  return dir;
}

void run_solve(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ScenarioRuntime rt = build_runtime(cfg, opt);
  const fs::path dir = resolve_out_dir(cfg, opt);

  const SeriesSolution sol =
      make_series_solution(rt.data, rt.reduced, rt.modes, rt.horizon);
  Field field = sample(sol, rt.sample_nx, rt.sample_nt);
  lift_field_in_place(field, rt.mu);

  double max_err = 0.0;
  if (opt.analytic) {
    const Expr reference = Expr::parse(*opt.analytic);
    const Bindings consts =
        make_constants(cfg.tau, cfg.length, cfg.horizon);
    const SpaceTimeFn ref = forcing_fn(reference, consts);
    auto out = open_out(dir / "solution.csv");
    out << "x,t,u,u_ref,err\n";
    for (Eigen::Index j = 0; j < field.ts.size(); ++j) {
      for (Eigen::Index i = 0; i < field.xs.size(); ++i) {
        const double r = ref(field.xs[i], field.ts[j]);
        const double err = std::abs(field.values(i, j) - r);
        max_err = std::max(max_err, err);
        out << format_number(field.xs[i]) << ',' << format_number(field.ts[j])
            << ',' << format_number(field.values(i, j)) << ','
            << format_number(r) << ',' << format_number(err) << '\n';
      }
    }
  } else {
    write_csv(field, dir / "solution.csv");
  }

  {
    auto out = open_out(dir / "modes.csv");
    out << "n,L_n,D_n\n";
    for (int n = 1; n <= rt.modes; ++n) {
      const ModeConstants mc = mode_constants(rt.reduced, n);
      out << n << ',' << format_number(mc.big_l) << ','
          << format_number(mc.big_d) << '\n';
    }
  }

  {
    const RegularityReport report =
        regularity_check(rt.data, rt.reduced, rt.horizon, std::max(rt.modes, 8),
                         rt.delta);
    const double tail = std::abs(modal_values(sol, rt.horizon)[rt.modes - 1]);
    auto out = open_out(dir / "report.txt");
    out << report.summary();
    out << "tail estimate |y_N(T)| at N=" << rt.modes << ": "
        << format_number(tail) << '\n';
    if (opt.analytic) {
      out << "max |u - analytic| over the sample grid: "
          << format_number(max_err) << '\n';
    }
  }

  if (!opt.quiet) {
    std::cout << "solve: wrote " << (dir / "solution.csv").string()
              << ", modes.csv, report.txt";
    if (opt.analytic) {
      std::cout << " (max analytic error " << max_err << ")";
    }
    std::cout << '\n';
  }
}

void run_control(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ScenarioRuntime rt = build_runtime(cfg, opt);
  if (!rt.data.target) {
    throw ConfigError("control requires a target expression in [data]");
  }
  const fs::path dir = resolve_out_dir(cfg, opt);

  const ControlSeries cs =
      synthesize(rt.data, rt.reduced, rt.modes, rt.horizon);

  {
    auto out = open_out(dir / "control.csv");
    out << "n,L_n,D_n,R_n,A_n\n";
    for (int n = 1; n <= cs.truncation; ++n) {
      out << n << ',' << format_number(cs.big_l[n - 1]) << ','
          << format_number(cs.big_d[n - 1]) << ','
          << format_number(cs.residuals[n - 1]) << ','
          << format_number(cs.amplitudes[n - 1]) << '\n';
    }
  }

  {
    const SpaceTimeFn steer = control_function(cs);
    Field field;
    field.xs = Eigen::VectorXd::LinSpaced(rt.sample_nx, 0.0,
                                          rt.reduced.length);
    field.ts = Eigen::VectorXd::LinSpaced(rt.sample_nt, 0.0, rt.horizon);
    field.values.resize(rt.sample_nx, rt.sample_nt);
    for (Eigen::Index j = 0; j < field.ts.size(); ++j) {
      for (Eigen::Index i = 0; i < field.xs.size(); ++i) {
        field.values(i, j) = steer(field.xs[i], field.ts[j]);
      }
    }
    lift_field_in_place(field, rt.mu);
    write_csv(field, dir / "control_field.csv");
  }

  const SteeringReport steering =
      verify_steering(cs, rt.data, rt.reduced, rt.fd, rt.sample_nx);
  {
    auto out = open_out(dir / "steering.txt");
    out << "series_terminal_error = " << format_number(steering.series_error)
        << '\n';
    out << "fd_terminal_error = " << format_number(steering.fd_error) << '\n';
    for (int n = 1; n <= cs.truncation; ++n) {
      out << "moment_defect[" << n
          << "] = " << format_number(verify_moment(cs, rt.reduced, n)) << '\n';
    }
  }

  if (!opt.quiet) {
    std::cout << "control: series terminal error " << steering.series_error
              << ", fd terminal error " << steering.fd_error << '\n';
  }
}

void run_verify(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ScenarioRuntime rt = build_runtime(cfg, opt);
  const fs::path dir = resolve_out_dir(cfg, opt);

  const FdResult fd =
      solve_fd(rt.reduced, rt.data, rt.data.forcing, rt.fd, rt.horizon);
  const SeriesSolution sol =
      make_series_solution(rt.data, rt.reduced, rt.modes, rt.horizon);

  // compare on a subsample of the finite-difference grid so both solvers
  // are evaluated at identical points
  const Eigen::Index nx_fd = fd.field.xs.size();
  const Eigen::Index nt_fd = fd.field.ts.size();
  const Eigen::Index nx_cmp =
      std::min<Eigen::Index>(rt.sample_nx, nx_fd);
  const Eigen::Index nt_cmp =
      std::min<Eigen::Index>(rt.sample_nt, nt_fd);

  double max_diff = 0.0;
  auto out = open_out(dir / "compare.csv");
  out << "x,t,u_series,u_fd,diff\n";
  const double lift_mu = rt.mu;
  for (Eigen::Index jj = 0; jj < nt_cmp; ++jj) {
    const Eigen::Index j = jj * (nt_fd - 1) / (nt_cmp - 1);
    const double t = fd.field.ts[j];
    const Eigen::VectorXd y = modal_values(sol, t);
    const double mu1 = rt.data.bnd_left ? rt.data.bnd_left(t) : 0.0;
    const double mu2 = rt.data.bnd_right ? rt.data.bnd_right(t) : 0.0;
    for (Eigen::Index ii = 0; ii < nx_cmp; ++ii) {
      const Eigen::Index i = ii * (nx_fd - 1) / (nx_cmp - 1);
      const double x = fd.field.xs[i];
      double u = mu1 + (mu2 - mu1) * x / rt.reduced.length;
      for (int n = 1; n <= rt.modes; ++n) {
        u += y[n - 1] * std::sin(kPi * n * x / rt.reduced.length);
      }
      double u_fd = fd.field.values(i, j);
      if (lift_mu != 0.0) {
        const double factor = std::exp(lift_mu * x);
        u *= factor;
        u_fd *= factor;
      }
      const double diff = std::abs(u - u_fd);
      max_diff = std::max(max_diff, diff);
      out << format_number(x) << ',' << format_number(t) << ','
          << format_number(u) << ',' << format_number(u_fd) << ','
          << format_number(diff) << '\n';
    }
  }

  {
    auto summary = open_out(dir / "verify.txt");
    summary << "max_abs_diff = " << format_number(max_diff) << '\n';
    summary << "fd_delay_steps = " << fd.delay_steps << '\n';
    summary << "fd_tau_snap_error = " << format_number(fd.tau_snap_error)
            << '\n';
  }
  if (!opt.quiet) {
    std::cout << "verify: max |series - fd| = " << max_diff << '\n';
  }
}

void run_check(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ScenarioRuntime rt = build_runtime(cfg, opt);
  const fs::path dir = resolve_out_dir(cfg, opt);
  const RegularityReport report = regularity_check(
      rt.data, rt.reduced, rt.horizon, std::max(rt.modes, 8), rt.delta);
  auto out = open_out(dir / "report.txt");
  out << report.summary();
  if (!opt.quiet) {
    std::cout << report.summary();
  }
}

void emit_delayed_exp(double b, double tau, double t_max, int samples,
                      const fs::path& out_dir) {
  if (!(tau > 0.0)) {
    throw ConfigError("expfig: tau must be positive");
  }
  if (samples < 2) {
    throw ConfigError("expfig: samples must be >= 2");
  }
  fs::create_directories(out_dir);
  const DelayedExp fn{b, tau};
  auto out = open_out(out_dir / "expfig.csv");
  out << "# delayed exponential, rate=" << format_number(b)
      << " delay=" << format_number(tau) << '\n';
  out << "# knots:";
  out << ' ' << format_number(-tau);
  for (double knot = 0.0; knot <= t_max; knot += tau) {
    out << ' ' << format_number(knot);
  }
  out << '\n';
  out << "t,exp_tau\n";
  const double lo = -2.0 * tau;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (t_max - lo) * i / (samples - 1);
    out << format_number(t) << ',' << format_number(eval(fn, t)) << '\n';
  }
}

}  // namespace dhc
