/// @file constraints.hpp
/// @brief Dirichlet elimination and the zero-mean pressure constraint.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "micropolar/field.hpp"
#include "micropolar/mesh.hpp"
#include "micropolar/sparse.hpp"

namespace micropolar {

/// Symmetric elimination of the constrained dofs: constrained rows and
/// columns are zeroed, the diagonal set to one, and the known values moved to
/// the right-hand side. `values[i]` is the prescribed value of `dofs[i]`.
/// The pattern is kept, so the result still shares it with the input.
void apply_dirichlet_in_place(CsrMatrix& a, std::span<double> b, std::span<const std::size_t> dofs,
                              std::span<const double> values);

std::pair<CsrMatrix, std::vector<double>> apply_dirichlet(const CsrMatrix& a,
                                                          std::span<const double> b,
                                                          std::span<const std::size_t> dofs,
                                                          std::span<const double> values);

/// Zeroes the listed entries of a coefficient vector.
void zero_dofs(std::span<double> x, std::span<const std::size_t> dofs);

/// Integral of every basis function, so that the integral of a field is
/// dot(weights, coeffs).
std::vector<double> mean_weights(const DofMap& space);

/// Shift by a constant so that the field integrates to zero. Lagrange bases
/// form a partition of unity, so the shift is exact in the discrete space.
FieldVector enforce_zero_mean(const FieldVector& p, const DofMap& space);
FieldVector enforce_zero_mean(const FieldVector& p, std::span<const double> weights);

}  // namespace micropolar
