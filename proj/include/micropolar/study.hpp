/// @file study.hpp
/// @brief Refinement sweeps, stability runs and CSV reporting.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "micropolar/config.hpp"

namespace micropolar {

/// Space-time errors of one (n, tau) run against the exact solution.
struct ErrorRow {
  std::size_t n = 0;
  double tau = 0.0;
  double h = 0.0;
  double err_u_linf_l2 = 0.0;
  double err_u_l2_h1 = 0.0;
  double err_p_l2_l2 = 0.0;
  double err_w_linf_l2 = 0.0;
  double err_w_l2_h1 = 0.0;
};

/// E^k for k = 0..K of one energy-test run.
struct EnergyTrace {
  std::size_t n = 0;
  double tau = 0.0;
  std::vector<double> energy;
};

struct StudyReport {
  StudyKind kind = StudyKind::single;
  std::vector<ErrorRow> rows;        ///< sorted by n ascending, then tau descending
  std::vector<EnergyTrace> traces;   ///< energy-test only, same order
  bool complete = true;
  std::string failure;               ///< first failure, empty when complete
};

/// One error run: initialize from the exact fields at t=0, advance K steps,
/// accumulate per-step errors. Throws SolverError on solver failure.
ErrorRow run_error_point(const RunConfig& config, std::size_t n, double tau);

/// One energy run with f = g = 0 and data taken from the exact fields at
/// config.init_time (zero data for solution=zero).
EnergyTrace run_energy_point(const RunConfig& config, std::size_t n, double tau);

/// Runs every (n, tau) point, at most `threads` at a time. Solver failures
/// are caught and reported through `complete` / `failure`.
StudyReport run_study(const RunConfig& config, unsigned threads = 1);

/// Rate columns between consecutive rows; NaN where undefined.
struct RowRates {
  double u, p, w;
};
std::vector<RowRates> row_rates(const std::vector<ErrorRow>& rows);

/// Error studies: tau,h,err_*,rate_u,rate_p,rate_w. Energy tests: tau,k,energy.
/// A failed study gets a trailing "# incomplete: <reason>" line.
void write_csv(const StudyReport& report, std::ostream& out);

}  // namespace micropolar
