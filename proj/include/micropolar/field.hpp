/// @file field.hpp
/// @brief Coefficient vector of a finite element field.
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "micropolar/mesh.hpp"

namespace micropolar {

struct SpaceInfo {
  int order = 1;
  int components = 1;
  std::size_t n_dofs = 0;

  friend bool operator==(const SpaceInfo&, const SpaceInfo&) = default;
};

inline SpaceInfo space_info(const DofMap& map) {
  return {map.order(), map.components(), map.n_dofs()};
}

class FieldVector {
 public:
  FieldVector() = default;
  explicit FieldVector(const DofMap& space) : space_(space_info(space)), coeffs_(space.n_dofs()) {}
  FieldVector(const DofMap& space, std::vector<double> coeffs)
      : space_(space_info(space)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != space_.n_dofs)
      throw std::invalid_argument("FieldVector: coefficient count does not match the space");
  }

  const SpaceInfo& space() const { return space_; }
  bool lives_on(const DofMap& map) const { return space_ == space_info(map); }

  std::size_t size() const { return coeffs_.size(); }
  double& operator[](std::size_t i) { return coeffs_[i]; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  std::vector<double>& coeffs() { return coeffs_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  operator std::span<const double>() const { return coeffs_; }
  operator std::span<double>() { return coeffs_; }

  /// Coefficients of one component of a component-blocked vector field.
  std::span<const double> component(int c) const {
    const std::size_t n = size() / static_cast<std::size_t>(space_.components);
    return {coeffs_.data() + static_cast<std::size_t>(c) * n, n};
  }
  std::span<double> component(int c) {
    const std::size_t n = size() / static_cast<std::size_t>(space_.components);
    return {coeffs_.data() + static_cast<std::size_t>(c) * n, n};
  }

 private:
  SpaceInfo space_;
  std::vector<double> coeffs_;
};

}  // namespace micropolar
