/// @file solvers.hpp
/// @brief Preconditioned Krylov solvers (CG, restarted GMRES).
///
/// Every solver reports the relative residual ||b - A x|| / ||b|| recomputed
/// from scratch at exit, never the recurrence estimate.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "micropolar/sparse.hpp"

namespace micropolar {

enum class PreconditionerKind { none, jacobi, ilu0 };

struct SolverControl {
  double rel_tol = 1e-10;
  std::size_t max_iterations = 20000;
  std::size_t restart = 60;  ///< GMRES only
  PreconditionerKind preconditioner = PreconditionerKind::jacobi;
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  std::string message;
};

/// Raised by callers that cannot continue after a failed solve.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveReport report)
      : std::runtime_error(what + " (iterations=" + std::to_string(report.iterations) +
                           ", residual=" + std::to_string(report.relative_residual) + ": " +
                           report.message + ")"),
        report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  /// z = P^{-1} r
  virtual void apply(std::span<const double> r, std::span<double> z) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  void apply(std::span<const double> r, std::span<double> z) const override;
};

class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const CsrMatrix& a);
  void apply(std::span<const double> r, std::span<double> z) const override;

 private:
  std::vector<double> inv_diag_;
};

/// Incomplete LU with zero fill-in on the pattern of A.
class Ilu0Preconditioner final : public Preconditioner {
 public:
  explicit Ilu0Preconditioner(const CsrMatrix& a);
  void apply(std::span<const double> r, std::span<double> z) const override;

 private:
  CsrMatrix lu_;
  std::vector<std::size_t> diag_pos_;
};

std::unique_ptr<Preconditioner> make_preconditioner(PreconditionerKind kind, const CsrMatrix& a);

/// Null space handled by the CG solver.
enum class Nullspace { none, constants };

/// Preconditioned conjugate gradients for SPD systems. `x` holds the initial
/// guess on entry. With Nullspace::constants the operator is treated as SPD on
/// the complement of the constant vector: b and every search direction are
/// projected onto that complement and the returned x has zero coefficient sum.
SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                     const SolverControl& control, const Preconditioner& precond,
                     Nullspace nullspace = Nullspace::none);

/// Right-preconditioned restarted GMRES (modified Gram-Schmidt, Givens rotations).
SolveReport gmres_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                        const SolverControl& control, const Preconditioner& precond);

/// Convenience overloads building the preconditioner named in `control`.
SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                     const SolverControl& control, Nullspace nullspace = Nullspace::none);
SolveReport gmres_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                        const SolverControl& control);

}  // namespace micropolar
