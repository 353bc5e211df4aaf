#include "dhc/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dhc/errors.hpp"

namespace dhc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// strips quotes from quoted values; removes trailing # comments outside
// quotes
std::string clean_value(std::string_view raw, int line_no) {
  raw = trim(raw);
  if (!raw.empty() && raw.front() == '"') {
    const auto close = raw.find('"', 1);
    if (close == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": unterminated quoted value");
    }
    const std::string_view rest = trim(raw.substr(close + 1));
    if (!rest.empty() && rest.front() != '#') {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": trailing text after quoted value");
    }
    return std::string(raw.substr(1, close - 1));
  }
  const auto hash = raw.find('#');
  if (hash != std::string_view::npos) {
    raw = trim(raw.substr(0, hash));
  }
  return std::string(raw);
}

double parse_real(const std::string& value, const std::string& key,
                  int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                      "' expects a number, got '" + value + "'");
  }
}

int parse_int(const std::string& value, const std::string& key, int line_no) {
  const double v = parse_real(value, key, line_no);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                      "' expects an integer");
  }
  return i;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  ScenarioConfig cfg;
  std::string section;
  int line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    if (view.front() == '[') {
      if (view.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      section = std::string(trim(view.substr(1, view.size() - 2)));
      if (section != "problem" && section != "data" && section != "run") {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown section '" + section + "'");
      }
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key{trim(view.substr(0, eq))};
    const std::string value = clean_value(view.substr(eq + 1), line_no);
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": key outside any section");
    }

    if (section == "problem") {
      if (key == "a1" || key == "a2" || key == "b1" || key == "b2" ||
          key == "d1" || key == "d2") {
        cfg.has_original = true;
        const double v = parse_real(value, key, line_no);
        if (key == "a1") cfg.original.a1 = v;
        if (key == "a2") cfg.original.a2 = v;
        if (key == "b1") cfg.original.b1 = v;
        if (key == "b2") cfg.original.b2 = v;
        if (key == "d1") cfg.original.d1 = v;
        if (key == "d2") cfg.original.d2 = v;
      } else if (key == "a1sq" || key == "a2sq" || key == "c1" ||
                 key == "c2") {
        cfg.has_reduced = true;
        const double v = parse_real(value, key, line_no);
        if (key == "a1sq") cfg.a1sq = v;
        if (key == "a2sq") cfg.a2sq = v;
        if (key == "c1") cfg.c1 = v;
        if (key == "c2") cfg.c2 = v;
      } else if (key == "tau") {
        cfg.tau = parse_real(value, key, line_no);
      } else if (key == "l") {
        cfg.length = parse_real(value, key, line_no);
      } else {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown problem key '" + key + "'");
      }
    } else if (section == "data") {
      if (key == "history") {
        cfg.history = value;
      } else if (key == "bnd_left") {
        cfg.bnd_left = value;
      } else if (key == "bnd_right") {
        cfg.bnd_right = value;
      } else if (key == "forcing") {
        cfg.forcing = value;
      } else if (key == "target") {
        cfg.target = value;
        cfg.has_target = true;
      } else {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown data key '" + key + "'");
      }
    } else {  // run
      if (key == "T") {
        cfg.horizon = parse_real(value, key, line_no);
        cfg.has_horizon = true;
      } else if (key == "modes") {
        cfg.modes = parse_int(value, key, line_no);
      } else if (key == "delta") {
        cfg.delta = parse_real(value, key, line_no);
      } else if (key == "fd_nx") {
        cfg.fd.nx = parse_int(value, key, line_no);
      } else if (key == "fd_dt") {
        cfg.fd.dt = parse_real(value, key, line_no);
        cfg.has_fd_dt = true;
      } else if (key == "fd_scheme") {
        if (value == "implicit-euler") {
          cfg.fd.scheme = FdScheme::ImplicitEuler;
        } else if (value == "crank-nicolson") {
          cfg.fd.scheme = FdScheme::CrankNicolson;
        } else {
          throw ConfigError("line " + std::to_string(line_no) +
                            ": fd_scheme must be implicit-euler or "
                            "crank-nicolson");
        }
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else if (key == "sample_nx") {
        cfg.sample_nx = parse_int(value, key, line_no);
      } else if (key == "sample_nt") {
        cfg.sample_nt = parse_int(value, key, line_no);
      } else {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown run key '" + key + "'");
      }
    }
  }
  if (!cfg.has_fd_dt) {
    cfg.fd.dt = cfg.tau / 2000.0;
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void ScenarioConfig::validate() const {
  if (has_original && has_reduced) {
    throw ConfigError(
        "problem section mixes original (a1, b1, ...) and reduced "
        "(a1sq, c1, ...) coefficients; provide exactly one set");
  }
  if (!has_original && !has_reduced) {
    throw ConfigError("problem section provides no coefficients");
  }
  if (!(tau > 0.0)) {
    throw ConfigError("tau must be positive");
  }
  if (!(length > 0.0)) {
    throw ConfigError("l must be positive");
  }
  if (!has_horizon || !(horizon > 0.0)) {
    throw ConfigError("run section must set T > 0");
  }
  if (modes < 1) {
    throw ConfigError("modes must be >= 1");
  }
  if (fd.nx < 8) {
    throw ConfigError("fd_nx must be >= 8");
  }
  if (!(fd.dt > 0.0)) {
    throw ConfigError("fd_dt must be positive");
  }
  if (sample_nx < 2 || sample_nt < 2) {
    throw ConfigError("sample_nx and sample_nt must be >= 2");
  }
}

std::string ScenarioConfig::serialize() const {
  std::ostringstream out;
  out << "[problem]\n";
  if (has_original) {
    out << "a1 = " << format_real(original.a1) << '\n';
    out << "a2 = " << format_real(original.a2) << '\n';
    out << "b1 = " << format_real(original.b1) << '\n';
    out << "b2 = " << format_real(original.b2) << '\n';
    out << "d1 = " << format_real(original.d1) << '\n';
    out << "d2 = " << format_real(original.d2) << '\n';
  } else {
    out << "a1sq = " << format_real(a1sq) << '\n';
    out << "a2sq = " << format_real(a2sq) << '\n';
    out << "c1 = " << format_real(c1) << '\n';
    out << "c2 = " << format_real(c2) << '\n';
  }
  out << "tau = " << format_real(tau) << '\n';
  out << "l = " << format_real(length) << '\n';
  out << "\n[data]\n";
  out << "history = \"" << history << "\"\n";
  out << "bnd_left = \"" << bnd_left << "\"\n";
  out << "bnd_right = \"" << bnd_right << "\"\n";
  out << "forcing = \"" << forcing << "\"\n";
  if (has_target) {
    out << "target = \"" << target << "\"\n";
  }
  out << "\n[run]\n";
  out << "T = " << format_real(horizon) << '\n';
  out << "modes = " << modes << '\n';
  out << "delta = " << format_real(delta) << '\n';
  out << "fd_nx = " << fd.nx << '\n';
  out << "fd_dt = " << format_real(fd.dt) << '\n';
  out << "fd_scheme = "
      << (fd.scheme == FdScheme::ImplicitEuler ? "implicit-euler"
                                               : "crank-nicolson")
      << '\n';
  if (!out_dir.empty()) {
    out << "out_dir = \"" << out_dir << "\"\n";
  }
  out << "sample_nx = " << sample_nx << '\n';
  out << "sample_nt = " << sample_nt << '\n';
  return out.str();
}

}  // namespace dhc
