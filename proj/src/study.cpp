#include "micropolar/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "micropolar/mms.hpp"

namespace micropolar {

namespace {

struct ExactFunctions {
  VectorFunction u;
  TensorFunction grad_u;
  ScalarFunction p;
  VectorFunction grad_p;
  ScalarFunction w;
  VectorFunction grad_w;
};

ExactFunctions exact_at(SolutionKind kind, double t) {
  ExactFunctions e;
  if (kind == SolutionKind::zero) return e;
  e.u = [t](double x, double y) { return mms::velocity(t, x, y); };
  e.grad_u = [t](double x, double y) { return mms::velocity_gradient(t, x, y); };
  e.p = [t](double x, double y) { return mms::pressure(t, x, y); };
  e.grad_p = [t](double x, double y) { return mms::pressure_gradient(t, x, y); };
  e.w = [t](double x, double y) { return mms::angular(t, x, y); };
  e.grad_w = [t](double x, double y) { return mms::angular_gradient(t, x, y); };
  return e;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string format_rate(double r) { return std::isfinite(r) ? format_real(r) : std::string(); }

}  // namespace

ErrorRow run_error_point(const RunConfig& config, std::size_t n, double tau) {
  const Mesh mesh = build_uniform_mesh(n);
  const TimeGrid grid = TimeGrid::from_step(config.final_time_for(tau), tau);
  const FractionalStepper stepper(mesh, config.params, grid, config.solver);

  VectorSource f;
  ScalarSource g;
  if (config.solution == SolutionKind::manufactured) {
    const PhysParams params = config.params;
    f = [params](double t, double x, double y) { return mms::forcings(t, x, y, params).f; };
    g = [params](double t, double x, double y) { return mms::forcings(t, x, y, params).g; };
  }

  std::vector<double> eu_l2, eu_h1, ep_l2, ew_l2, ew_h1;
  auto record = [&](const TimeState& s) {
    const ExactFunctions e = exact_at(config.solution, grid.time(s.k));
    const auto nu = error_norms(s.u, stepper.velocity_space(), e.u, e.grad_u);
    const auto np = error_norms(s.p, stepper.pressure_space(), e.p, e.grad_p);
    const auto nw = error_norms(s.w, stepper.angular_space(), e.w, e.grad_w);
    eu_l2.push_back(nu.l2);
    eu_h1.push_back(nu.h1_seminorm);
    ep_l2.push_back(np.l2);
    ew_l2.push_back(nw.l2);
    ew_h1.push_back(nw.h1_seminorm);
  };

  const ExactFunctions e0 = exact_at(config.solution, 0.0);
  TimeState state = stepper.initialize(e0.u, e0.w, e0.p);
  record(state);
  while (state.k < grid.K) {
    state = stepper.advance(state, f, g);
    record(state);
  }

  ErrorRow row;
  row.n = n;
  row.tau = tau;
  row.h = mesh.h;
  row.err_u_linf_l2 = mms::discrete_linf_norm(eu_l2);
  row.err_u_l2_h1 = mms::discrete_l2_norm(eu_h1, grid.tau());
  row.err_p_l2_l2 = mms::discrete_l2_norm(ep_l2, grid.tau());
  row.err_w_linf_l2 = mms::discrete_linf_norm(ew_l2);
  row.err_w_l2_h1 = mms::discrete_l2_norm(ew_h1, grid.tau());
  return row;
}

EnergyTrace run_energy_point(const RunConfig& config, std::size_t n, double tau) {
  const Mesh mesh = build_uniform_mesh(n);
  const TimeGrid grid{config.final_time_for(tau), config.steps_for(tau)};
  const FractionalStepper stepper(mesh, config.params, grid, config.solver);

  const ExactFunctions e0 = exact_at(config.solution, config.init_time);
  TimeState state = stepper.initialize(e0.u, e0.w, e0.p);
  EnergyTrace trace{n, tau, {stepper.energy(state)}};
  while (state.k < grid.K) {
    state = stepper.advance(state, {}, {});
    trace.energy.push_back(stepper.energy(state));
  }
  return trace;
}

StudyReport run_study(const RunConfig& config, unsigned threads) {
  validate(config);
  struct Point {
    std::size_t n;
    double tau;
  };
  std::vector<Point> points;
  for (std::size_t n : config.n)
    for (double tau : config.tau) points.push_back({n, tau});
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.n != b.n ? a.n < b.n : a.tau > b.tau;
  });

  const bool energy = config.study == StudyKind::energy_test;
  std::vector<ErrorRow> rows(points.size());
  std::vector<EnergyTrace> traces(points.size());
  std::vector<std::string> errors(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      try {
        if (energy)
          traces[i] = run_energy_point(config, points[i].n, points[i].tau);
        else
          rows[i] = run_error_point(config, points[i].n, points[i].tau);
      } catch (const std::exception& e) {
        errors[i] = "n=" + std::to_string(points[i].n) + " tau=" + format_real(points[i].tau) +
                    ": " + e.what();
      }
    }
  };
  const unsigned count =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }

  StudyReport report;
  report.kind = config.study;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!errors[i].empty()) {
      if (report.complete) report.failure = errors[i];
      report.complete = false;
      continue;
    }
    if (energy)
      report.traces.push_back(std::move(traces[i]));
    else
      report.rows.push_back(rows[i]);
  }
  return report;
}

std::vector<RowRates> row_rates(const std::vector<ErrorRow>& rows) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  auto rate = [](double coarse, double fine) {
    return coarse > 0.0 && fine > 0.0 ? mms::convergence_rate(coarse, fine) : nan;
  };
  std::vector<RowRates> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0) {
      out.push_back({nan, nan, nan});
      continue;
    }
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    out.push_back({rate(a.err_u_linf_l2, b.err_u_linf_l2), rate(a.err_p_l2_l2, b.err_p_l2_l2),
                   rate(a.err_w_linf_l2, b.err_w_linf_l2)});
  }
  return out;
}

void write_csv(const StudyReport& report, std::ostream& out) {
  if (report.kind == StudyKind::energy_test) {
    out << "tau,k,energy\n";
    for (const auto& t : report.traces)
      for (std::size_t k = 0; k < t.energy.size(); ++k)
        out << format_real(t.tau) << ',' << k << ',' << format_real(t.energy[k]) << '\n';
  } else {
    out << "tau,h,err_u_linf_l2,err_u_l2_h1,err_p_l2_l2,err_w_linf_l2,err_w_l2_h1,rate_u,rate_p,"
           "rate_w\n";
    const auto rates = row_rates(report.rows);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      out << format_real(r.tau) << ',' << format_real(r.h) << ',' << format_real(r.err_u_linf_l2)
          << ',' << format_real(r.err_u_l2_h1) << ',' << format_real(r.err_p_l2_l2) << ','
          << format_real(r.err_w_linf_l2) << ',' << format_real(r.err_w_l2_h1) << ','
          << format_rate(rates[i].u) << ',' << format_rate(rates[i].p) << ','
          << format_rate(rates[i].w) << '\n';
    }
  }
  if (!report.complete) out << "# incomplete: " << report.failure << '\n';
}

}  // namespace micropolar
