/// @file params.hpp
/// @brief Material constants of the micropolar model.
#pragma once

namespace micropolar {

struct PhysParams {
  double j = 1.0;     ///< microinertia
  double nu = 1.0;    ///< kinematic viscosity
  double nu_r = 1.0;  ///< vortex viscosity
  double c0 = 1.0;
  double ca = 1.0;
  double cd = 1.0;

  double nu0() const { return nu + nu_r; }
  double c1() const { return ca + cd; }
  double c2() const { return c0 + cd - ca; }

  /// Throws std::invalid_argument unless all constants and c2 are positive.
  void validate() const;
};

}  // namespace micropolar
