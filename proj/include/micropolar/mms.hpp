/// @file mms.hpp
/// @brief Manufactured solution on (-1,1)^2, its forcing terms, discrete
///        space-time norms and observed convergence rates.
///
///   u = pi sin(t) ( sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y) )
///   p = sin(t) cos(pi x) sin(pi y)
///   w = pi sin(t) sin^2(pi x) sin^2(pi y)
///
/// The forcings are the closed-form residuals of
///   f = u_t + (u.grad)u - nu0 lap u + grad p - 2 nu_r rot w
///   g = j w_t + j u.grad w - c1 lap w + 4 nu_r w - 2 nu_r rot u
#pragma once

#include <span>

#include "micropolar/mesh.hpp"
#include "micropolar/params.hpp"

namespace micropolar::mms {

struct ExactValues {
  Vec2 u;
  double p;
  double w;
};

ExactValues exact(double t, double x, double y);

Vec2 velocity(double t, double x, double y);
Mat2 velocity_gradient(double t, double x, double y);
Vec2 velocity_laplacian(double t, double x, double y);
Vec2 velocity_time_derivative(double t, double x, double y);

double pressure(double t, double x, double y);
Vec2 pressure_gradient(double t, double x, double y);

double angular(double t, double x, double y);
Vec2 angular_gradient(double t, double x, double y);
double angular_laplacian(double t, double x, double y);
double angular_time_derivative(double t, double x, double y);

struct Forcings {
  Vec2 f;
  double g;
};

Forcings forcings(double t, double x, double y, const PhysParams& params);

/// max_k values[k]; throws std::invalid_argument on an empty list.
double discrete_linf_norm(std::span<const double> per_step_values);
/// sqrt(tau * sum_k values[k]^2), k = 0..K; throws on an empty list.
double discrete_l2_norm(std::span<const double> per_step_values, double tau);

/// log2(e_coarse / e_fine); throws std::invalid_argument for nonpositive errors.
double convergence_rate(double e_coarse, double e_fine);

}  // namespace micropolar::mms
