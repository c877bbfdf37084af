#include "micropolar/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace micropolar {

void gauss_legendre(std::size_t n_points, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n_points, 0.0);
  weights.assign(n_points, 0.0);
  if (n_points == 1) {
    weights[0] = 2.0;
    return;
  }
  const auto n = static_cast<double>(n_points);
  for (std::size_t i = 0; i < (n_points + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n_points; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n_points - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n_points - 1 - i] = w;
  }
}

QuadratureRule quadrature_rule(int poly_degree) {
  if (poly_degree < 0) poly_degree = 0;
  const auto n1d = static_cast<std::size_t>(poly_degree / 2 + 1);
  std::vector<double> x, w;
  gauss_legendre(n1d, x, w);

  QuadratureRule rule;
  rule.exact_degree = static_cast<int>(2 * n1d - 1);
  for (std::size_t j = 0; j < n1d; ++j)
    for (std::size_t i = 0; i < n1d; ++i) {
      rule.points.push_back({x[i], x[j]});
      rule.weights.push_back(w[i] * w[j]);
    }
  return rule;
}

namespace {
double node_position(int order, int node) { return -1.0 + 2.0 * node / order; }
}  // namespace

double lagrange_1d(int order, int node, double xi) {
  const double xa = node_position(order, node);
  double v = 1.0;
  for (int b = 0; b <= order; ++b)
    if (b != node) {
      const double xb = node_position(order, b);
      v *= (xi - xb) / (xa - xb);
    }
  return v;
}

double lagrange_1d_derivative(int order, int node, double xi) {
  const double xa = node_position(order, node);
  double sum = 0.0;
  for (int m = 0; m <= order; ++m) {
    if (m == node) continue;
    double term = 1.0 / (xa - node_position(order, m));
    for (int b = 0; b <= order; ++b)
      if (b != node && b != m) {
        const double xb = node_position(order, b);
        term *= (xi - xb) / (xa - xb);
      }
    sum += term;
  }
  return sum;
}

ShapeTable tabulate(int order, const QuadratureRule& rule) {
  ShapeTable t;
  t.order = order;
  t.n_local = static_cast<std::size_t>((order + 1) * (order + 1));
  t.n_points = rule.size();
  t.value.resize(t.n_points * t.n_local);
  t.d_xi.resize(t.value.size());
  t.d_eta.resize(t.value.size());
  for (std::size_t q = 0; q < t.n_points; ++q) {
    const auto [xi, eta] = rule.points[q];
    for (int ay = 0; ay <= order; ++ay)
      for (int ax = 0; ax <= order; ++ax) {
        const std::size_t a = static_cast<std::size_t>(ax + ay * (order + 1));
        const double lx = lagrange_1d(order, ax, xi), ly = lagrange_1d(order, ay, eta);
        t.value[q * t.n_local + a] = lx * ly;
        t.d_xi[q * t.n_local + a] = lagrange_1d_derivative(order, ax, xi) * ly;
        t.d_eta[q * t.n_local + a] = lx * lagrange_1d_derivative(order, ay, eta);
      }
  }
  return t;
}

}  // namespace micropolar
