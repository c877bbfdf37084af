// Dense reference computations for the tests. Everything here goes through
// Eigen so that it shares no code path with the library under test.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "micropolar/assembly.hpp"
#include "micropolar/mesh.hpp"
#include "micropolar/sparse.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const micropolar::CsrMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                            static_cast<Eigen::Index>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_columns(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k)
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols[k])) += vals[k];
  }
  return d;
}

inline Eigen::VectorXd vec(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

/// Dofs whose support point is not on the boundary.
inline std::vector<Eigen::Index> interior_dofs(const micropolar::DofMap& space) {
  const auto& b = space.boundary_dofs();
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < space.n_dofs(); ++i)
    if (!std::binary_search(b.begin(), b.end(), i)) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

inline std::vector<Eigen::Index> all_dofs(const micropolar::DofMap& space) {
  std::vector<Eigen::Index> out(space.n_dofs());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Eigen::Index>(i);
  return out;
}

inline Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& rows,
                                const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rows[i], cols[j]);
  return out;
}

inline double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Discrete inf-sup constant of a velocity/pressure pair:
///   beta^2 = smallest nonzero eigenvalue of B A^{-1} B^T q = lambda M_p q,
/// A the Dirichlet-restricted vector Laplacian (H^1_0 norm), M_p the
/// pressure mass matrix (L^2 norm). Also returns the number of zero
/// eigenvalues, which is 1 (the constants) when there are no spurious modes.
struct InfSup {
  double beta = 0.0;
  int zero_modes = 0;
};

inline InfSup inf_sup(const micropolar::DofMap& velocity, const micropolar::DofMap& pressure) {
  const auto in = interior_dofs(velocity);
  const auto pq = all_dofs(pressure);
  const Eigen::MatrixXd A = submatrix(dense(micropolar::assemble_stiffness(velocity)), in, in);
  const Eigen::MatrixXd B =
      submatrix(dense(micropolar::assemble_divergence(velocity, pressure)), pq, in);
  const Eigen::MatrixXd Mp = dense(micropolar::assemble_mass(pressure));
  const Eigen::MatrixXd S = B * A.llt().solve(B.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Mp, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lam = es.eigenvalues();  // ascending
  const double scale = lam.maxCoeff();
  InfSup out;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= 1e-10 * scale) {
      ++out.zero_modes;
    } else {
      out.beta = std::sqrt(lam(i));
      break;
    }
  }
  return out;
}

/// Random coefficients in [-1,1], zero on the boundary dofs.
inline micropolar::FieldVector random_field(const micropolar::DofMap& space, std::mt19937& rng,
                                            bool zero_boundary = true) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  micropolar::FieldVector f(space);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = d(rng);
  if (zero_boundary)
    for (std::size_t b : space.boundary_dofs()) f[b] = 0.0;
  return f;
}

/// Full H^1 norm from the assembled mass and stiffness matrices.
inline double h1_norm(const micropolar::FieldVector& u, const Eigen::MatrixXd& M,
                      const Eigen::MatrixXd& A) {
  const Eigen::VectorXd x = vec(u);
  return std::sqrt(x.dot(M * x) + x.dot(A * x));
}

}  // namespace oracle
