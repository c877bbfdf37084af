#include "micropolar/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace micropolar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(trim(v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

double parse_real(std::string_view s, std::size_t line, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(line, "invalid number '" + std::string(s) + "' for " + std::string(key));
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t line, std::string_view key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(line, "invalid integer '" + std::string(s) + "' for " + std::string(key));
  return v;
}

PreconditionerKind parse_preconditioner(std::string_view s, std::size_t line) {
  if (s == "jacobi") return PreconditionerKind::jacobi;
  if (s == "ilu0") return PreconditionerKind::ilu0;
  if (s == "none") return PreconditionerKind::none;
  throw ConfigError(line, "unknown preconditioner '" + std::string(s) + "'");
}

bool is_halving(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i] * 2.0 - v[i - 1]) > 1e-12 * v[i - 1]) return false;
  return true;
}

bool is_doubling(const std::vector<std::size_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != 2 * v[i - 1]) return false;
  return true;
}

}  // namespace

std::string_view to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::single: return "single";
    case StudyKind::time_sweep: return "time-sweep";
    case StudyKind::space_sweep: return "space-sweep";
    case StudyKind::energy_test: return "energy-test";
  }
  return "?";
}

std::size_t RunConfig::steps_for(double tau_value) const {
  if (study == StudyKind::energy_test && steps > 0) return steps;
  return TimeGrid::from_step(T, tau_value).K;
}

double RunConfig::final_time_for(double tau_value) const {
  if (study == StudyKind::energy_test && steps > 0) return static_cast<double>(steps) * tau_value;
  return T;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (ch == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (ch == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != '#')
      ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;

    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ConfigError(line, "expected key=value, got '" + std::string(token) + "'");
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (value.empty() && key != "out")
      throw ConfigError(line, "missing value for " + std::string(key));

    if (key == "study") {
      if (value == "single") cfg.study = StudyKind::single;
      else if (value == "time-sweep") cfg.study = StudyKind::time_sweep;
      else if (value == "space-sweep") cfg.study = StudyKind::space_sweep;
      else if (value == "energy-test") cfg.study = StudyKind::energy_test;
      else throw ConfigError(line, "unknown study '" + std::string(value) + "'");
    } else if (key == "n") {
      cfg.n.clear();
      for (auto item : split_list(value)) {
        const std::size_t n = parse_count(item, line, key);
        if (n == 0) throw ConfigError(line, "n must be positive");
        cfg.n.push_back(n);
      }
    } else if (key == "tau") {
      cfg.tau.clear();
      for (auto item : split_list(value)) {
        const double t = parse_real(item, line, key);
        if (!(t > 0.0)) throw ConfigError(line, "tau must be positive");
        cfg.tau.push_back(t);
      }
    } else if (key == "T") {
      cfg.T = parse_real(value, line, key);
      if (!(cfg.T > 0.0)) throw ConfigError(line, "T must be positive");
    } else if (key == "steps") {
      cfg.steps = parse_count(value, line, key);
    } else if (key == "init_time") {
      cfg.init_time = parse_real(value, line, key);
    } else if (key == "solution") {
      if (value == "manufactured") cfg.solution = SolutionKind::manufactured;
      else if (value == "zero") cfg.solution = SolutionKind::zero;
      else throw ConfigError(line, "unknown solution '" + std::string(value) + "'");
    } else if (key == "j") {
      cfg.params.j = parse_real(value, line, key);
    } else if (key == "nu") {
      cfg.params.nu = parse_real(value, line, key);
    } else if (key == "nu_r") {
      cfg.params.nu_r = parse_real(value, line, key);
    } else if (key == "c0") {
      cfg.params.c0 = parse_real(value, line, key);
    } else if (key == "ca") {
      cfg.params.ca = parse_real(value, line, key);
    } else if (key == "cd") {
      cfg.params.cd = parse_real(value, line, key);
    } else if (key == "tol") {
      const double tol = parse_real(value, line, key);
      if (!(tol > 0.0)) throw ConfigError(line, "tol must be positive");
      cfg.solver.momentum.rel_tol = cfg.solver.pressure.rel_tol = tol;
    } else if (key == "maxit") {
      cfg.solver.momentum.max_iterations = cfg.solver.pressure.max_iterations =
          parse_count(value, line, key);
    } else if (key == "restart") {
      cfg.solver.momentum.restart = parse_count(value, line, key);
    } else if (key == "preconditioner") {
      cfg.solver.momentum.preconditioner = parse_preconditioner(value, line);
    } else if (key == "out") {
      cfg.output = std::string(value);
    } else {
      throw ConfigError(line, "unknown key '" + std::string(key) + "'");
    }
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (cfg.n.empty() || cfg.tau.empty()) throw ConfigError(0, "n and tau must be given");

  switch (cfg.study) {
    case StudyKind::single:
      if (cfg.n.size() != 1 || cfg.tau.size() != 1)
        throw ConfigError(0, "single study takes one n and one tau");
      break;
    case StudyKind::time_sweep:
      if (cfg.n.size() != 1) throw ConfigError(0, "time-sweep takes one n");
      if (cfg.tau.size() < 2 || !is_halving(cfg.tau))
        throw ConfigError(0, "time-sweep needs a halving tau sequence");
      break;
    case StudyKind::space_sweep:
      if (cfg.tau.size() != 1) throw ConfigError(0, "space-sweep takes one tau");
      if (cfg.n.size() < 2 || !is_doubling(cfg.n))
        throw ConfigError(0, "space-sweep needs a doubling n sequence");
      break;
    case StudyKind::energy_test:
      if (cfg.n.size() != 1) throw ConfigError(0, "energy-test takes one n");
      break;
  }
  if (cfg.study != StudyKind::energy_test || cfg.steps == 0) {
    for (double t : cfg.tau) {
      try {
        (void)TimeGrid::from_step(cfg.T, t);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
      }
    }
  }
  if (cfg.solver.momentum.max_iterations == 0) throw ConfigError(0, "maxit must be positive");
}

}  // namespace micropolar
