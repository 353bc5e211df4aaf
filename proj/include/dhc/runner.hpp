#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dhc/config.hpp"
#include "dhc/expr.hpp"
#include "dhc/reduction.hpp"

namespace dhc {

/// Flag overrides shared by the subcommands. Output directory resolution:
/// --out flag, then the config's out_dir, then $DHC_OUT_DIR, then ".".
struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<int> modes;
  std::optional<std::string> analytic;  // reference u(x, t) expression
  bool quiet = false;
};

/// Scenario objects assembled from a config: the canonical problem, its
/// data, and the substitution exponent for lifting outputs back to the
/// original variables (0 for reduced configs).
struct ScenarioRuntime {
  ReducedProblem reduced;
  ProblemData data;
  double mu = 0.0;
  double horizon = 0.0;
  int modes = 16;
  double delta = 0.5;
  FdConfig fd;
  int sample_nx = 65;
  int sample_nt = 33;
};

ScenarioRuntime build_runtime(const ScenarioConfig& cfg,
                              const RunOptions& opt);

std::filesystem::path resolve_out_dir(const ScenarioConfig& cfg,
                                      const RunOptions& opt);

/// solve: writes solution.csv, modes.csv, report.txt.
void run_solve(const ScenarioConfig& cfg, const RunOptions& opt);

/// control: writes control.csv, control_field.csv, steering.txt.
void run_control(const ScenarioConfig& cfg, const RunOptions& opt);

/// verify: writes compare.csv, verify.txt (series vs finite differences).
void run_verify(const ScenarioConfig& cfg, const RunOptions& opt);

/// check: writes report.txt with the regularity verdict only.
void run_check(const ScenarioConfig& cfg, const RunOptions& opt);

/// expfig: samples the delayed exponential over [-2 tau, t_max] into
/// expfig.csv with the knot locations in a header comment.
void emit_delayed_exp(double b, double tau, double t_max, int samples,
                      const std::filesystem::path& out_dir);

}  // namespace dhc
