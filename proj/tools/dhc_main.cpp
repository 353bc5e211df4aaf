#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "dhc/config.hpp"
#include "dhc/errors.hpp"
#include "dhc/runner.hpp"

namespace {

// exit codes: 0 success, 2 configuration error, 3 numeric failure
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const dhc::ConfigError*>(&e) ||
      dynamic_cast<const dhc::SyntaxError*>(&e) ||
      dynamic_cast<const dhc::UnknownIdentifier*>(&e) ||
      dynamic_cast<const dhc::UnboundVariable*>(&e) ||
      dynamic_cast<const dhc::CompatibilityViolation*>(&e) ||
      dynamic_cast<const dhc::ProportionalityViolation*>(&e) ||
      dynamic_cast<const dhc::MissingTarget*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e)) {
    return 2;
  }
  return 3;
}

const char* kind_of(const std::exception& e) {
  if (dynamic_cast<const dhc::ConfigError*>(&e)) return "config";
  if (dynamic_cast<const dhc::SyntaxError*>(&e)) return "expression-syntax";
  if (dynamic_cast<const dhc::UnknownIdentifier*>(&e)) return "unknown-identifier";
  if (dynamic_cast<const dhc::UnboundVariable*>(&e)) return "unbound-variable";
  if (dynamic_cast<const dhc::CompatibilityViolation*>(&e)) return "compatibility";
  if (dynamic_cast<const dhc::ProportionalityViolation*>(&e)) return "proportionality";
  if (dynamic_cast<const dhc::MissingTarget*>(&e)) return "missing-target";
  if (dynamic_cast<const dhc::QuadratureNonConvergence*>(&e)) return "quadrature";
  if (dynamic_cast<const dhc::OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const dhc::SingularMode*>(&e)) return "singular-mode";
  if (dynamic_cast<const dhc::ControlBlowup*>(&e)) return "control-blowup";
  if (dynamic_cast<const dhc::UnstableRun*>(&e)) return "unstable-run";
  if (dynamic_cast<const dhc::DomainError*>(&e)) return "domain";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "argument";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delayed heat equation: spectral solver and exact control"};
  app.require_subcommand(1);

  std::string config_path;
  dhc::RunOptions opt;
  std::string out_dir;
  int modes = 0;
  std::string analytic;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", config_path, "scenario file");
    if (needs_config) {
      c->required();
    }
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--modes", modes, "series truncation override");
    cmd->add_flag("--quiet", opt.quiet, "suppress progress output");
  };

  CLI::App* solve = app.add_subcommand("solve", "series solve to CSV");
  add_common(solve, true);
  solve->add_option("--analytic", analytic,
                    "reference u(x,t) expression for error columns");

  CLI::App* control = app.add_subcommand("control", "synthesize the control");
  add_common(control, true);

  CLI::App* verify =
      app.add_subcommand("verify", "series vs finite-difference comparison");
  add_common(verify, true);

  CLI::App* check = app.add_subcommand("check", "regularity heuristic only");
  add_common(check, true);

  CLI::App* expfig =
      app.add_subcommand("expfig", "sample the delayed exponential");
  double fig_b = 1.0;
  double fig_tau = 1.0;
  double fig_tmax = 3.0;
  int fig_samples = 201;
  expfig->add_option("--b", fig_b, "rate");
  expfig->add_option("--tau", fig_tau, "delay")->check(CLI::PositiveNumber);
  expfig->add_option("--tmax", fig_tmax, "upper end of the sample range");
  expfig->add_option("--samples", fig_samples, "number of rows");
  expfig->add_option("--out", out_dir, "output directory");
  expfig->add_flag("--quiet", opt.quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "error: kind=cli msg=\"" << e.what() << "\"\n";
    return 2;
  }

  if (!out_dir.empty()) {
    opt.out_dir = out_dir;
  }
  if (modes > 0) {
    opt.modes = modes;
  }
  if (!analytic.empty()) {
    opt.analytic = analytic;
  }

  try {
    if (expfig->parsed()) {
      std::string dir = ".";
      if (opt.out_dir) {
        dir = *opt.out_dir;
      } else if (const char* env = std::getenv("DHC_OUT_DIR")) {
        dir = env;
      }
      dhc::emit_delayed_exp(fig_b, fig_tau, fig_tmax, fig_samples, dir);
      if (!opt.quiet) {
        std::cout << "expfig: wrote " << dir << "/expfig.csv\n";
      }
      return 0;
    }
    const dhc::ScenarioConfig cfg = dhc::ScenarioConfig::parse_file(config_path);
    if (solve->parsed()) {
      dhc::run_solve(cfg, opt);
    } else if (control->parsed()) {
      dhc::run_control(cfg, opt);
    } else if (verify->parsed()) {
      dhc::run_verify(cfg, opt);
    } else if (check->parsed()) {
      dhc::run_check(cfg, opt);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=" << kind_of(e) << " msg=\"" << e.what()
              << "\"\n";
    return exit_code_for(e);
  }
}
