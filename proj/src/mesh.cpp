#include "micropolar/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace micropolar {

Mesh build_uniform_mesh(std::size_t n, const Rectangle& domain) {
  if (n == 0) throw std::invalid_argument("build_uniform_mesh: n must be positive");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw std::invalid_argument("build_uniform_mesh: domain has zero area");
  if (std::abs(domain.width() - domain.height()) > 1e-14 * domain.width())
    throw std::invalid_argument("build_uniform_mesh: only square domains are supported");

  Mesh mesh;
  mesh.domain = domain;
  mesh.n = n;
  mesh.h = domain.width() / static_cast<double>(n);

  const std::size_t np = n + 1;
  mesh.vertices.reserve(np * np);
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t i = 0; i < np; ++i)
      mesh.vertices.push_back({domain.x0 + static_cast<double>(i) * mesh.h,
                               domain.y0 + static_cast<double>(j) * mesh.h});

  mesh.cells.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = i + j * np;
      mesh.cells.push_back({v, v + 1, v + np, v + np + 1});
    }
  return mesh;
}

DofMap DofMap::build(const Rectangle& domain, std::size_t n, int order, int components) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("build_dof_map: unsupported polynomial order " +
                                std::to_string(order));
  if (components != 1 && components != 2)
    throw std::invalid_argument("build_dof_map: components must be 1 or 2");

  DofMap map;
  map.order_ = order;
  map.components_ = components;
  map.n_ = n;
  map.domain_ = domain;
  map.h_ = domain.width() / static_cast<double>(n);
  map.nodes_per_side_ = static_cast<std::size_t>(order) * n + 1;

  const std::size_t np = map.nodes_per_side_;
  const std::size_t ns = map.n_scalar_dofs();
  const auto p = static_cast<std::size_t>(order);

  map.cell_dofs_.resize(n * n * map.dofs_per_cell());
  std::size_t k = 0;
  for (std::size_t c = 0; c < n * n; ++c) {
    const std::size_t ci = c % n, cj = c / n;
    for (int comp = 0; comp < components; ++comp)
      for (std::size_t b = 0; b <= p; ++b)
        for (std::size_t a = 0; a <= p; ++a)
          map.cell_dofs_[k++] =
              static_cast<std::size_t>(comp) * ns + (p * ci + a) + (p * cj + b) * np;
  }

  for (int comp = 0; comp < components; ++comp)
    for (std::size_t j = 0; j < np; ++j)
      for (std::size_t i = 0; i < np; ++i)
        if (i == 0 || j == 0 || i + 1 == np || j + 1 == np)
          map.boundary_dofs_.push_back(static_cast<std::size_t>(comp) * ns + i + j * np);
  return map;
}

Vec2 DofMap::support_point(std::size_t dof) const {
  const std::size_t i = dof % n_scalar_dofs();
  const double spacing = h_ / static_cast<double>(order_);
  return {domain_.x0 + static_cast<double>(i % nodes_per_side_) * spacing,
          domain_.y0 + static_cast<double>(i / nodes_per_side_) * spacing};
}

DofMap DofMap::scalar_space() const { return build(domain_, n_, order_, 1); }

DofMap build_dof_map(const Mesh& mesh, int order, int components) {
  return DofMap::build(mesh.domain, mesh.n, order, components);
}

}  // namespace micropolar
