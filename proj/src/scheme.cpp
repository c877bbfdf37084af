#include "micropolar/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "micropolar/constraints.hpp"

namespace micropolar {

void PhysParams::validate() const {
  const struct {
    const char* name;
    double value;
  } base[] = {{"j", j}, {"nu", nu}, {"nu_r", nu_r}, {"c0", c0}, {"ca", ca}, {"cd", cd}};
  for (const auto& [name, value] : base)
    if (!(value > 0.0) || !std::isfinite(value))
      throw std::invalid_argument(std::string("material constant ") + name + " must be positive");
  if (!(c2() > 0.0))
    throw std::invalid_argument("material constants must satisfy c2 = c0 + cd - ca > 0 (got " +
                                std::to_string(c2()) + ")");
}

TimeGrid TimeGrid::from_step(double T, double tau) {
  if (!(T > 0.0) || !(tau > 0.0)) throw std::invalid_argument("TimeGrid: T and tau must be positive");
  const double ratio = T / tau;
  const double k = std::round(ratio);
  if (k < 1.0 || std::abs(ratio - k) > 1e-9 * std::max(1.0, k))
    throw std::invalid_argument("TimeGrid: T / tau = " + std::to_string(ratio) +
                                " is not an integer number of steps");
  return {T, static_cast<std::size_t>(k)};
}

FractionalStepper::FractionalStepper(const Mesh& mesh, const PhysParams& params,
                                     const TimeGrid& grid, const StepperOptions& options)
    : params_(params),
      grid_(grid),
      options_(options),
      velocity_(build_dof_map(mesh, 2, 2)),
      velocity_block_(build_dof_map(mesh, 2, 1)),
      pressure_(build_dof_map(mesh, 1, 1)),
      angular_(build_dof_map(mesh, 2, 1)),
      convection_(velocity_, velocity_block_),
      mass_(assemble_mass(velocity_block_)),
      stiffness_(assemble_stiffness(velocity_block_)),
      pressure_stiffness_(assemble_stiffness(pressure_)),
      gradient_(assemble_pressure_gradient(velocity_, pressure_)),
      gradient_t_(gradient_.transpose()),
      curl_w_(assemble_curl_scalar_to_vector(velocity_, angular_)),
      curl_u_(assemble_curl_vector_to_scalar(angular_, velocity_)),
      pressure_weights_(mean_weights(pressure_)) {
  params_.validate();
  if (grid_.K == 0) throw std::invalid_argument("FractionalStepper: K must be positive");
  mass_.share_pattern_with(CsrMatrix(convection_.block_pattern()));
  stiffness_.share_pattern_with(mass_);
  pressure_precond_ = make_preconditioner(options_.pressure.preconditioner, pressure_stiffness_);
}

TimeState FractionalStepper::zero_state() const {
  TimeState s;
  s.u = FieldVector(velocity_);
  s.w = FieldVector(angular_);
  s.p = FieldVector(pressure_);
  s.p_prev = s.p;
  return s;
}

TimeState FractionalStepper::initialize(const VectorFunction& u0, const ScalarFunction& w0,
                                        const ScalarFunction& p0) const {
  TimeState s = zero_state();
  if (u0) s.u = l2_project(u0, velocity_);
  if (w0) s.w = l2_project(w0, angular_);
  if (p0) s.p = l2_project(p0, pressure_);
  zero_dofs(s.u.coeffs(), velocity_.boundary_dofs());
  zero_dofs(s.w.coeffs(), angular_.boundary_dofs());
  s.p = enforce_zero_mean(s.p, pressure_weights_);
  s.p_prev = s.p;
  return s;
}

void FractionalStepper::check_state(const TimeState& s) const {
  if (!s.u.lives_on(velocity_) || !s.w.lives_on(angular_) || !s.p.lives_on(pressure_) ||
      !s.p_prev.lives_on(pressure_))
    throw std::invalid_argument("FractionalStepper: state does not match the discrete spaces");
}

FieldVector FractionalStepper::extrapolate_pressure(const TimeState& s) {
  if (s.k == 0) return s.p;
  FieldVector out = s.p;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * s.p[i] - s.p_prev[i];
  return out;
}

std::vector<double> FractionalStepper::solve_block(const CsrMatrix& system,
                                                   std::span<const double> rhs,
                                                   std::span<const double> guess,
                                                   SolveReport& report,
                                                   const Preconditioner& precond,
                                                   const char* stage) const {
  std::vector<double> x(guess.begin(), guess.end());
  report = gmres_solve(system, rhs, x, options_.momentum, precond);
  if (!report.converged) throw SolverError(std::string(stage) + ": solver did not converge", report);
  return x;
}

FieldVector FractionalStepper::velocity_step(const TimeState& s, const FieldVector& p_sharp,
                                             const VectorFunction& f_next) const {
  check_state(s);
  if (!p_sharp.lives_on(pressure_)) throw std::invalid_argument("velocity_step: p# space mismatch");
  const double inv_tau = 1.0 / tau();

  CsrMatrix system = convection_.assemble_block(s.u);
  system.add_scaled(inv_tau, mass_);
  system.add_scaled(params_.nu0(), stiffness_);

  // rhs = M u^k / tau - G p# + 2 nu_r R w^k + <f, v>
  std::vector<double> rhs = assemble_load(velocity_, f_next);
  const auto grad_p = gradient_ * std::span<const double>(p_sharp);
  const auto rot_w = curl_w_ * std::span<const double>(s.w);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] += -grad_p[i] + 2.0 * params_.nu_r * rot_w[i];
  const std::size_t n = velocity_block_.n_dofs();
  for (int c = 0; c < 2; ++c) {
    const auto mu = mass_ * s.u.component(c);
    for (std::size_t i = 0; i < n; ++i) rhs[static_cast<std::size_t>(c) * n + i] += inv_tau * mu[i];
  }

  const auto& bdofs = velocity_block_.boundary_dofs();
  const std::vector<double> zeros(bdofs.size(), 0.0);
  std::span<double> rhs0(rhs.data(), n), rhs1(rhs.data() + n, n);
  apply_dirichlet_in_place(system, rhs0, bdofs, zeros);
  zero_dofs(rhs1, bdofs);

  const auto precond = make_preconditioner(options_.momentum.preconditioner, system);
  FieldVector u_next(velocity_);
  for (int c = 0; c < 2; ++c) {
    std::span<const double> b(rhs.data() + static_cast<std::size_t>(c) * n, n);
    const auto x = solve_block(system, b, s.u.component(c), diagnostics_.velocity[c], *precond,
                               "velocity_step");
    std::copy(x.begin(), x.end(), u_next.component(c).begin());
  }
  return u_next;
}

FieldVector FractionalStepper::pressure_step(const TimeState& s, const FieldVector& u_next) const {
  check_state(s);
  if (!u_next.lives_on(velocity_)) throw std::invalid_argument("pressure_step: u space mismatch");
  std::vector<double> rhs = gradient_t_ * std::span<const double>(u_next);
  double sum = 0.0, abs_sum = 0.0;
  for (double& r : rhs) {
    r /= tau();
    sum += r;
    abs_sum += std::abs(r);
  }
  diagnostics_.pressure_rhs_mean = abs_sum > 0.0 ? std::abs(sum) / abs_sum : 0.0;

  std::vector<double> increment(rhs.size(), 0.0);
  diagnostics_.pressure = cg_solve(pressure_stiffness_, rhs, increment, options_.pressure,
                                   *pressure_precond_, Nullspace::constants);
  if (!diagnostics_.pressure.converged)
    throw SolverError("pressure_step: solver did not converge", diagnostics_.pressure);

  FieldVector p_next = s.p;
  axpy(1.0, increment, p_next.coeffs());
  return enforce_zero_mean(p_next, pressure_weights_);
}

FieldVector FractionalStepper::angular_step(const TimeState& s, const FieldVector& u_next,
                                            const ScalarFunction& g_next) const {
  check_state(s);
  if (!u_next.lives_on(velocity_)) throw std::invalid_argument("angular_step: u space mismatch");
  const double j = params_.j, inv_tau = 1.0 / tau();

  CsrMatrix system = convection_.assemble_block(u_next);
  system.scale(j);
  system.add_scaled(j * inv_tau + 4.0 * params_.nu_r, mass_);
  system.add_scaled(params_.c1(), stiffness_);

  // rhs = j M w^k / tau + 2 nu_r C u^{k+1} + <g, z>
  std::vector<double> rhs = assemble_load(angular_, g_next);
  const auto mw = mass_ * std::span<const double>(s.w);
  const auto rot_u = curl_u_ * std::span<const double>(u_next);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] += j * inv_tau * mw[i] + 2.0 * params_.nu_r * rot_u[i];

  const auto& bdofs = angular_.boundary_dofs();
  const std::vector<double> zeros(bdofs.size(), 0.0);
  apply_dirichlet_in_place(system, rhs, bdofs, zeros);
  const auto precond = make_preconditioner(options_.momentum.preconditioner, system);
  return FieldVector(angular_,
                     solve_block(system, rhs, s.w, diagnostics_.angular, *precond, "angular_step"));
}

TimeState FractionalStepper::advance(const TimeState& s, const VectorSource& f,
                                     const ScalarSource& g) const {
  if (s.k >= grid_.K) throw std::out_of_range("advance: state is already at the final time");
  const double t_next = grid_.time(s.k + 1);
  VectorFunction f_next;
  ScalarFunction g_next;
  if (f) f_next = [&f, t_next](double x, double y) { return f(t_next, x, y); };
  if (g) g_next = [&g, t_next](double x, double y) { return g(t_next, x, y); };

  const FieldVector p_sharp = extrapolate_pressure(s);
  FieldVector u_next = velocity_step(s, p_sharp, f_next);
  FieldVector p_next = pressure_step(s, u_next);
  FieldVector w_next = angular_step(s, u_next, g_next);

  TimeState out;
  out.k = s.k + 1;
  out.p_prev = s.p;
  out.u = std::move(u_next);
  out.p = std::move(p_next);
  out.w = std::move(w_next);
  return out;
}

double FractionalStepper::energy(const TimeState& s) const {
  check_state(s);
  double e = 0.0;
  for (int c = 0; c < 2; ++c) {
    const auto mu = mass_ * s.u.component(c);
    e += dot(s.u.component(c), mu);
  }
  const auto mw = mass_ * std::span<const double>(s.w);
  e += params_.j * dot(s.w, mw);
  const auto ap = pressure_stiffness_ * std::span<const double>(s.p);
  e += tau() * tau() * dot(s.p, ap);
  return e;
}

}  // namespace micropolar
