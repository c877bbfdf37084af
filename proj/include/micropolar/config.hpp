/// @file config.hpp
/// @brief Flat key=value run configuration.
///
/// Tokens are separated by whitespace or newlines; '#' starts a comment.
/// Lists are comma separated. Recognised keys:
///
///   study           single | time-sweep | space-sweep | energy-test
///   n               cells per side (list for space-sweep)
///   tau             time step (list for time-sweep and energy-test)
///   T               final time
///   steps           energy-test only: steps per run (default T / tau)
///   init_time       energy-test only: time at which the exact fields seed u0, w0, p0
///   solution        manufactured | zero
///   j nu nu_r c0 ca cd   material constants
///   tol maxit restart    Krylov controls shared by all solves
///   preconditioner  jacobi | ilu0 | none (momentum and angular systems)
///   out             CSV output path (empty: stdout)
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "micropolar/params.hpp"
#include "micropolar/scheme.hpp"

namespace micropolar {

enum class StudyKind { single, time_sweep, space_sweep, energy_test };
enum class SolutionKind { manufactured, zero };

struct RunConfig {
  StudyKind study = StudyKind::single;
  std::vector<std::size_t> n{16};
  std::vector<double> tau{0.1};
  double T = 1.0;
  std::size_t steps = 0;
  double init_time = 1.0;
  SolutionKind solution = SolutionKind::manufactured;
  PhysParams params;
  StepperOptions solver;
  std::string output;

  /// Number of steps for a given tau.
  std::size_t steps_for(double tau) const;
  double final_time_for(double tau) const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  /// 1-based line of the offending token; 0 for whole-config invariant violations.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates. Throws ConfigError.
RunConfig parse_config(std::string_view text);

/// Checks the cross-key invariants; throws ConfigError with line 0.
void validate(const RunConfig& config);

std::string_view to_string(StudyKind kind);

}  // namespace micropolar
