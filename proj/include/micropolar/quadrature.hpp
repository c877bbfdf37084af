/// @file quadrature.hpp
/// @brief Tensor Gauss-Legendre rules and tabulated Lagrange shape functions
///        on the reference square [-1,1]^2.
#pragma once

#include <cstddef>
#include <vector>

#include "micropolar/mesh.hpp"

namespace micropolar {

struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exact_degree = 0;  ///< per coordinate

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [-1,1] with the given number of points.
void gauss_legendre(std::size_t n_points, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor rule exact for polynomials of degree <= poly_degree in each coordinate.
/// Negative degrees are treated as 0.
QuadratureRule quadrature_rule(int poly_degree);

/// Quadrature degree used for bilinear forms of a space of the given order.
constexpr int default_quadrature_degree(int order) { return 2 * order + 2; }

/// 1D Lagrange polynomial on equispaced nodes of [-1,1].
double lagrange_1d(int order, int node, double xi);
double lagrange_1d_derivative(int order, int node, double xi);

/// Q_order shape values and reference gradients at every point of a rule.
/// Index layout: [q * n_local + a], local index a = ax + ay * (order + 1).
struct ShapeTable {
  int order = 1;
  std::size_t n_local = 0;
  std::size_t n_points = 0;
  std::vector<double> value;
  std::vector<double> d_xi;
  std::vector<double> d_eta;

  double phi(std::size_t q, std::size_t a) const { return value[q * n_local + a]; }
  double dphi_xi(std::size_t q, std::size_t a) const { return d_xi[q * n_local + a]; }
  double dphi_eta(std::size_t q, std::size_t a) const { return d_eta[q * n_local + a]; }
};

ShapeTable tabulate(int order, const QuadratureRule& rule);

}  // namespace micropolar
