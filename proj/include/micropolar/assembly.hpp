/// @file assembly.hpp
/// @brief Assembly of the bilinear and trilinear forms of the scheme, load
///        vectors, projections and error norms.
///
/// All cells of a uniform mesh are translates of one square, so every form
/// with constant coefficients has the same element matrix on every cell; it
/// is computed once and scattered. Only the convection operator depends on
/// cell data.
///
/// Sign and orientation conventions (2D, scalar angular velocity):
///   rot w = ( d_y w, -d_x w )     for scalar w
///   rot u = d_x u_2 - d_y u_1     for vector u
///   b_h(u, v, z) = <(u . grad) v, z> + 1/2 <(div u) v, z>
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "micropolar/field.hpp"
#include "micropolar/mesh.hpp"
#include "micropolar/quadrature.hpp"
#include "micropolar/solvers.hpp"
#include "micropolar/sparse.hpp"

namespace micropolar {

using ScalarFunction = std::function<double(double x, double y)>;
using VectorFunction = std::function<Vec2(double x, double y)>;
using TensorFunction = std::function<Mat2(double x, double y)>;

/// Pattern coupling every test dof of a cell with every trial dof of the cell.
std::shared_ptr<const SparsityPattern> build_pattern(const DofMap& test, const DofMap& trial);

/// M_ij = <phi_j, phi_i>. Vector spaces give the component block-diagonal matrix.
CsrMatrix assemble_mass(const DofMap& space);
/// A_ij = <grad phi_j, grad phi_i>, no boundary conditions applied.
CsrMatrix assemble_stiffness(const DofMap& space);
/// (G p)_i = <grad p, phi_i>; rows on the vector velocity space.
CsrMatrix assemble_pressure_gradient(const DofMap& velocity, const DofMap& pressure);
/// (B u)_q = <psi_q, div u>; rows on the pressure space.
CsrMatrix assemble_divergence(const DofMap& velocity, const DofMap& pressure);
/// (R w)_i = <rot w, phi_i>; rows on the vector velocity space.
CsrMatrix assemble_curl_scalar_to_vector(const DofMap& velocity, const DofMap& angular);
/// (C u)_z = <rot u, psi_z>; rows on the scalar angular space.
CsrMatrix assemble_curl_vector_to_scalar(const DofMap& angular, const DofMap& velocity);

/// Assembles N(u) with z^T N(u) v = b_h(u, v, z) for a fixed trial space,
/// caching the pattern and the cell-to-value scatter map between calls.
class ConvectionAssembler {
 public:
  ConvectionAssembler(const DofMap& velocity, const DofMap& trial);

  /// Operator on the scalar component space of `trial`.
  CsrMatrix assemble_block(const FieldVector& u) const;
  /// Operator on `trial` itself (block-diagonal when trial is a vector space).
  CsrMatrix assemble(const FieldVector& u) const;

  const std::shared_ptr<const SparsityPattern>& block_pattern() const { return pattern_; }

 private:
  DofMap velocity_;
  DofMap trial_block_;
  int trial_components_;
  QuadratureRule rule_;
  ShapeTable u_table_;
  ShapeTable v_table_;
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<std::size_t> scatter_;
};

/// Throws std::invalid_argument when u does not live on `velocity` or the
/// spaces are on different meshes.
CsrMatrix assemble_convection(const FieldVector& u, const DofMap& velocity, const DofMap& trial);

/// (F)_i = <f, phi_i> with quadrature degree `quad_degree` (default 2*order+2).
std::vector<double> assemble_load(const DofMap& space, const ScalarFunction& f, int quad_degree = -1);
std::vector<double> assemble_load(const DofMap& space, const VectorFunction& f, int quad_degree = -1);

/// Nodal interpolant.
FieldVector interpolate(const DofMap& space, const ScalarFunction& f);
FieldVector interpolate(const DofMap& space, const VectorFunction& f);

/// Solves M c = <f, phi>. Throws SolverError if the mass solve fails.
FieldVector l2_project(const ScalarFunction& f, const DofMap& space,
                       const SolverControl& control = {1e-13, 5000, 60, PreconditionerKind::jacobi});
FieldVector l2_project(const VectorFunction& f, const DofMap& space,
                       const SolverControl& control = {1e-13, 5000, 60, PreconditionerKind::jacobi});

struct ErrorNorms {
  double l2 = 0.0;          ///< ||u - u_h||_{L2}
  double h1_seminorm = 0.0; ///< ||grad(u - u_h)||_{L2}
};

/// Elementwise quadrature of degree 2*order+4.
ErrorNorms error_norms(const FieldVector& field, const DofMap& space, const ScalarFunction& exact,
                       const VectorFunction& exact_grad);
ErrorNorms error_norms(const FieldVector& field, const DofMap& space, const VectorFunction& exact,
                       const TensorFunction& exact_grad);

}  // namespace micropolar
