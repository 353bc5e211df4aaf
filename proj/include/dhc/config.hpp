#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dhc/fd_oracle.hpp"
#include "dhc/reduction.hpp"

namespace dhc {

/// Parsed scenario file. The format is line-oriented text with [problem],
/// [data] and [run] sections of key = value pairs; expressions are quoted
/// strings over the variables documented per slot (history: x, s;
/// boundaries: t; forcing: x, t; target: x) plus the constants pi, tau, l,
/// T. The problem section carries either original coefficients
/// (a1, a2, b1, b2, d1, d2) or reduced ones (a1sq, a2sq, c1, c2), never
/// both, plus tau and l.
struct ScenarioConfig {
  // problem
  bool has_original = false;
  bool has_reduced = false;
  OriginalProblem original;
  double a1sq = 1.0, a2sq = 0.0, c1 = 0.0, c2 = 0.0;  // reduced coefficients
  double tau = 1.0;
  double length = 1.0;

  // data (expression strings; empty = zero, empty target = absent)
  std::string history = "0";
  std::string bnd_left = "0";
  std::string bnd_right = "0";
  std::string forcing = "0";
  std::string target;
  bool has_target = false;

  // run
  double horizon = 1.0;
  bool has_horizon = false;
  int modes = 16;
  double delta = 0.5;
  FdConfig fd;
  bool has_fd_dt = false;
  std::string out_dir;
  int sample_nx = 65;
  int sample_nt = 33;

  static ScenarioConfig parse(std::string_view text);
  static ScenarioConfig parse_file(const std::filesystem::path& path);

  /// Canonical serialization; parsing it back yields an identical run.
  std::string serialize() const;

  /// Cross-field checks (exactly one coefficient set, T > 0, N >= 1, ...);
  /// parse() already calls this.
  void validate() const;
};

}  // namespace dhc
