#include "micropolar/constraints.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "micropolar/assembly.hpp"

namespace micropolar {

void apply_dirichlet_in_place(CsrMatrix& a, std::span<double> b, std::span<const std::size_t> dofs,
                              std::span<const double> values) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("apply_dirichlet: dimension mismatch");
  if (values.size() != dofs.size())
    throw std::invalid_argument("apply_dirichlet: one value per constrained dof required");

  constexpr double unset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> prescribed(n, unset);
  std::vector<char> constrained(n, 0);
  for (std::size_t k = 0; k < dofs.size(); ++k) {
    if (dofs[k] >= n) throw std::out_of_range("apply_dirichlet: dof index out of range");
    constrained[dofs[k]] = 1;
    prescribed[dofs[k]] = values[k];
  }

  for (std::size_t r = 0; r < n; ++r) {
    const auto cols = a.row_columns(r);
    auto vals = a.row_values(r);
    if (constrained[r]) {
      bool has_diag = false;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        vals[k] = (cols[k] == r) ? 1.0 : 0.0;
        has_diag = has_diag || cols[k] == r;
      }
      if (!has_diag) throw std::invalid_argument("apply_dirichlet: constrained row lacks a diagonal");
      b[r] = prescribed[r];
      continue;
    }
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (constrained[cols[k]]) {
        b[r] -= vals[k] * prescribed[cols[k]];
        vals[k] = 0.0;
      }
  }
}

std::pair<CsrMatrix, std::vector<double>> apply_dirichlet(const CsrMatrix& a,
                                                          std::span<const double> b,
                                                          std::span<const std::size_t> dofs,
                                                          std::span<const double> values) {
  std::pair<CsrMatrix, std::vector<double>> out{a, std::vector<double>(b.begin(), b.end())};
  apply_dirichlet_in_place(out.first, out.second, dofs, values);
  return out;
}

void zero_dofs(std::span<double> x, std::span<const std::size_t> dofs) {
  for (std::size_t d : dofs) x[d] = 0.0;
}

std::vector<double> mean_weights(const DofMap& space) {
  if (space.components() != 1) throw std::invalid_argument("mean_weights: scalar space required");
  return assemble_load(space, ScalarFunction([](double, double) { return 1.0; }));
}

FieldVector enforce_zero_mean(const FieldVector& p, std::span<const double> weights) {
  if (weights.size() != p.size()) throw std::invalid_argument("enforce_zero_mean: size mismatch");
  const double area = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double mean = dot(weights, p) / area;
  FieldVector out = p;
  for (double& c : out.coeffs()) c -= mean;
  return out;
}

FieldVector enforce_zero_mean(const FieldVector& p, const DofMap& space) {
  if (!p.lives_on(space)) throw std::invalid_argument("enforce_zero_mean: field/space mismatch");
  return enforce_zero_mean(p, mean_weights(space));
}

}  // namespace micropolar
