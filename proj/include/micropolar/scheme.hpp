/// @file scheme.hpp
/// @brief Fractional time stepping for the 2D micropolar Navier-Stokes equations.
///
/// One step advances (u, p, w) from t_k to t_{k+1} in four decoupled stages:
///   1. p# = p^k if k == 0, else 2 p^k - p^{k-1}
///   2. u^{k+1}: <(u^{k+1}-u^k)/tau, v> + b_h(u^k, u^{k+1}, v) + nu0 <grad u^{k+1}, grad v>
///               + <grad p#, v> = 2 nu_r <rot w^k, v> + <f^{k+1}, v>
///   3. p^{k+1} = p^k + dp,   <grad dp, grad r> = (1/tau) <u^{k+1}, grad r>
///   4. w^{k+1}: j <(w^{k+1}-w^k)/tau, z> + j b_h(u^{k+1}, w^{k+1}, z) + c1 <grad w^{k+1}, grad z>
///               + 4 nu_r <w^{k+1}, z> = 2 nu_r <rot u^{k+1}, z> + <g^{k+1}, z>
/// with homogeneous Dirichlet data for u and w and zero-mean pressure.
///
/// Velocity: vector Q2, pressure: Q1, angular velocity: scalar Q2. Every
/// velocity operator except the pressure gradient and the curl is
/// block-diagonal with identical blocks, so the momentum system is solved one
/// component at a time with a single scalar matrix.
#pragma once

#include <functional>
#include <memory>

#include "micropolar/assembly.hpp"
#include "micropolar/field.hpp"
#include "micropolar/mesh.hpp"
#include "micropolar/params.hpp"
#include "micropolar/solvers.hpp"

namespace micropolar {

struct TimeGrid {
  double T = 1.0;
  std::size_t K = 1;

  /// Throws std::invalid_argument unless T / tau is an integer to machine precision.
  static TimeGrid from_step(double T, double tau);

  double tau() const { return T / static_cast<double>(K); }
  /// t_k = k tau, with t_K == T exactly.
  double time(std::size_t k) const { return k == K ? T : static_cast<double>(k) * tau(); }
};

struct TimeState {
  std::size_t k = 0;
  FieldVector u;
  FieldVector w;
  FieldVector p;
  FieldVector p_prev;  ///< p^{k-1}; equal to p at k = 0
};

/// Sources evaluated at (t, x, y). Empty functions mean zero forcing.
using VectorSource = std::function<Vec2(double t, double x, double y)>;
using ScalarSource = std::function<double(double t, double x, double y)>;

struct StepperOptions {
  SolverControl momentum{1e-10, 20000, 60, PreconditionerKind::jacobi};
  SolverControl pressure{1e-10, 20000, 60, PreconditionerKind::jacobi};
};

/// Solver statistics of the most recent stages.
struct StepDiagnostics {
  SolveReport velocity[2];
  SolveReport pressure;
  SolveReport angular;
  /// |sum of pressure right-hand side| / sum of |entries|; zero up to roundoff.
  double pressure_rhs_mean = 0.0;
};

class FractionalStepper {
 public:
  FractionalStepper(const Mesh& mesh, const PhysParams& params, const TimeGrid& grid,
                    const StepperOptions& options = {});

  const DofMap& velocity_space() const { return velocity_; }
  const DofMap& pressure_space() const { return pressure_; }
  const DofMap& angular_space() const { return angular_; }
  const PhysParams& params() const { return params_; }
  const TimeGrid& grid() const { return grid_; }
  double tau() const { return grid_.tau(); }
  const StepDiagnostics& diagnostics() const { return diagnostics_; }

  /// L2 projections of the initial data; u and w are zeroed on the boundary,
  /// p is shifted to zero mean. Empty functions give zero fields.
  TimeState initialize(const VectorFunction& u0, const ScalarFunction& w0,
                       const ScalarFunction& p0) const;
  TimeState zero_state() const;

  static FieldVector extrapolate_pressure(const TimeState& state);

  FieldVector velocity_step(const TimeState& state, const FieldVector& p_sharp,
                            const VectorFunction& f_next) const;
  FieldVector pressure_step(const TimeState& state, const FieldVector& u_next) const;
  FieldVector angular_step(const TimeState& state, const FieldVector& u_next,
                           const ScalarFunction& g_next) const;

  /// Runs the four stages in order. Throws SolverError if any solve fails and
  /// std::out_of_range if the state is already at t_K.
  TimeState advance(const TimeState& state, const VectorSource& f, const ScalarSource& g) const;

  /// ||u||^2 + j ||w||^2 + tau^2 ||grad p||^2
  double energy(const TimeState& state) const;

  /// Cached operators, exposed for verification.
  const CsrMatrix& scalar_mass() const { return mass_; }
  const CsrMatrix& scalar_stiffness() const { return stiffness_; }
  const CsrMatrix& pressure_stiffness() const { return pressure_stiffness_; }
  const CsrMatrix& pressure_gradient() const { return gradient_; }
  const CsrMatrix& curl_scalar_to_vector() const { return curl_w_; }
  const CsrMatrix& curl_vector_to_scalar() const { return curl_u_; }

 private:
  void check_state(const TimeState& state) const;
  std::vector<double> solve_block(const CsrMatrix& system, std::span<const double> rhs,
                                  std::span<const double> guess, SolveReport& report,
                                  const Preconditioner& precond, const char* stage) const;

  PhysParams params_;
  TimeGrid grid_;
  StepperOptions options_;
  DofMap velocity_;
  DofMap velocity_block_;
  DofMap pressure_;
  DofMap angular_;

  ConvectionAssembler convection_;
  CsrMatrix mass_;                ///< scalar Q2
  CsrMatrix stiffness_;           ///< scalar Q2
  CsrMatrix pressure_stiffness_;  ///< Q1, pure Neumann
  CsrMatrix gradient_;            ///< vector Q2 x Q1
  CsrMatrix gradient_t_;
  CsrMatrix curl_w_;              ///< vector Q2 x scalar Q2
  CsrMatrix curl_u_;              ///< scalar Q2 x vector Q2
  std::vector<double> pressure_weights_;
  std::unique_ptr<Preconditioner> pressure_precond_;

  mutable StepDiagnostics diagnostics_;
};

}  // namespace micropolar
