/// @file mesh.hpp
/// @brief Uniform quadrilateral meshes of a square and Lagrange dof maps on them.
///
/// Numbering conventions used throughout the library:
///   - vertices and scalar dofs are lexicographic, x fastest;
///   - cell c has integer coordinates (c % n, c / n);
///   - local dofs of a cell are lexicographic on the (order+1)^2 tensor nodes;
///   - vector spaces are component-blocked: dof (comp, i) -> comp * n_scalar + i,
///     and cell dof lists hold all comp-0 dofs followed by all comp-1 dofs.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace micropolar {

using Vec2 = std::array<double, 2>;
/// grad[i][j] = d u_i / d x_j
using Mat2 = std::array<std::array<double, 2>, 2>;

struct Rectangle {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

struct Mesh {
  Rectangle domain;
  std::size_t n = 0;  ///< cells per side
  double h = 0.0;     ///< cell side length
  std::vector<Vec2> vertices;
  /// Vertex indices per cell: (0,0), (1,0), (0,1), (1,1) corners.
  std::vector<std::array<std::size_t, 4>> cells;

  std::size_t n_cells() const { return cells.size(); }
  Vec2 cell_origin(std::size_t cell) const {
    return {domain.x0 + static_cast<double>(cell % n) * h,
            domain.y0 + static_cast<double>(cell / n) * h};
  }
};

/// Throws std::invalid_argument for n == 0, a degenerate domain, or a
/// non-square domain.
Mesh build_uniform_mesh(std::size_t n, const Rectangle& domain = {});

/// Continuous Lagrange space of order 1 or 2 with one or two components.
class DofMap {
 public:
  int order() const { return order_; }
  int components() const { return components_; }
  std::size_t cells_per_side() const { return n_; }
  std::size_t n_cells() const { return n_ * n_; }
  const Rectangle& domain() const { return domain_; }
  double h() const { return h_; }

  std::size_t nodes_per_side() const { return nodes_per_side_; }
  std::size_t n_scalar_dofs() const { return nodes_per_side_ * nodes_per_side_; }
  std::size_t n_dofs() const { return n_scalar_dofs() * static_cast<std::size_t>(components_); }
  std::size_t scalar_dofs_per_cell() const {
    return static_cast<std::size_t>((order_ + 1) * (order_ + 1));
  }
  std::size_t dofs_per_cell() const {
    return scalar_dofs_per_cell() * static_cast<std::size_t>(components_);
  }

  std::span<const std::size_t> cell_dofs(std::size_t cell) const {
    return {cell_dofs_.data() + cell * dofs_per_cell(), dofs_per_cell()};
  }
  /// Sorted, all components.
  const std::vector<std::size_t>& boundary_dofs() const { return boundary_dofs_; }
  /// Support point of a dof; the component index is ignored.
  Vec2 support_point(std::size_t dof) const;
  Vec2 cell_origin(std::size_t cell) const {
    return {domain_.x0 + static_cast<double>(cell % n_) * h_,
            domain_.y0 + static_cast<double>(cell / n_) * h_};
  }

  /// Same mesh and order, one component.
  DofMap scalar_space() const;

  bool same_mesh(const DofMap& other) const {
    return n_ == other.n_ && domain_.x0 == other.domain_.x0 && domain_.x1 == other.domain_.x1 &&
           domain_.y0 == other.domain_.y0 && domain_.y1 == other.domain_.y1;
  }

 private:
  friend DofMap build_dof_map(const Mesh&, int, int);
  static DofMap build(const Rectangle& domain, std::size_t n, int order, int components);

  int order_ = 1;
  int components_ = 1;
  std::size_t n_ = 0;
  Rectangle domain_;
  double h_ = 0.0;
  std::size_t nodes_per_side_ = 0;
  std::vector<std::size_t> cell_dofs_;
  std::vector<std::size_t> boundary_dofs_;
};

/// Throws std::invalid_argument for order outside {1,2} or components outside {1,2}.
DofMap build_dof_map(const Mesh& mesh, int order, int components = 1);

}  // namespace micropolar
