#include "micropolar/mms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace micropolar::mms {

namespace {

constexpr double pi = std::numbers::pi;

/// Trigonometric factors shared by all fields at one point.
struct Trig {
  double sx, sy;    // sin(pi x), sin(pi y)
  double cx, cy;    // cos(pi x), cos(pi y)
  double s2x, s2y;  // sin(2 pi x), sin(2 pi y)
  double c2x, c2y;  // cos(2 pi x), cos(2 pi y)

  Trig(double x, double y)
      : sx(std::sin(pi * x)),
        sy(std::sin(pi * y)),
        cx(std::cos(pi * x)),
        cy(std::cos(pi * y)),
        s2x(std::sin(2 * pi * x)),
        s2y(std::sin(2 * pi * y)),
        c2x(std::cos(2 * pi * x)),
        c2y(std::cos(2 * pi * y)) {}
};

// Spatial profiles; the fields are sin(t) times these.
Vec2 u_shape(const Trig& s) { return {pi * s.sx * s.sx * s.s2y, -pi * s.s2x * s.sy * s.sy}; }

Mat2 grad_u_shape(const Trig& s) {
  const double pi2 = pi * pi;
  return {{{pi2 * s.s2x * s.s2y, 2 * pi2 * s.sx * s.sx * s.c2y},
           {-2 * pi2 * s.c2x * s.sy * s.sy, -pi2 * s.s2x * s.s2y}}};
}

Vec2 lap_u_shape(const Trig& s) {
  const double pi3 = pi * pi * pi;
  const double u1_xx = 2 * pi3 * s.c2x * s.s2y;
  const double u1_yy = -4 * pi3 * s.sx * s.sx * s.s2y;
  const double u2_xx = 4 * pi3 * s.s2x * s.sy * s.sy;
  const double u2_yy = -2 * pi3 * s.s2x * s.c2y;
  return {u1_xx + u1_yy, u2_xx + u2_yy};
}

double p_shape(const Trig& s) { return s.cx * s.sy; }
Vec2 grad_p_shape(const Trig& s) { return {-pi * s.sx * s.sy, pi * s.cx * s.cy}; }

double w_shape(const Trig& s) { return pi * s.sx * s.sx * s.sy * s.sy; }
Vec2 grad_w_shape(const Trig& s) {
  const double pi2 = pi * pi;
  return {pi2 * s.s2x * s.sy * s.sy, pi2 * s.sx * s.sx * s.s2y};
}
double lap_w_shape(const Trig& s) {
  const double pi3 = pi * pi * pi;
  return 2 * pi3 * (s.c2x * s.sy * s.sy + s.sx * s.sx * s.c2y);
}

}  // namespace

ExactValues exact(double t, double x, double y) {
  const Trig s(x, y);
  const double st = std::sin(t);
  const Vec2 u = u_shape(s);
  return {{st * u[0], st * u[1]}, st * p_shape(s), st * w_shape(s)};
}

Vec2 velocity(double t, double x, double y) { return exact(t, x, y).u; }

Mat2 velocity_gradient(double t, double x, double y) {
  Mat2 g = grad_u_shape(Trig(x, y));
  const double st = std::sin(t);
  for (auto& row : g)
    for (double& v : row) v *= st;
  return g;
}

Vec2 velocity_laplacian(double t, double x, double y) {
  const Vec2 l = lap_u_shape(Trig(x, y));
  const double st = std::sin(t);
  return {st * l[0], st * l[1]};
}

Vec2 velocity_time_derivative(double t, double x, double y) {
  const Vec2 u = u_shape(Trig(x, y));
  const double ct = std::cos(t);
  return {ct * u[0], ct * u[1]};
}

double pressure(double t, double x, double y) { return std::sin(t) * p_shape(Trig(x, y)); }

Vec2 pressure_gradient(double t, double x, double y) {
  const Vec2 g = grad_p_shape(Trig(x, y));
  const double st = std::sin(t);
  return {st * g[0], st * g[1]};
}

double angular(double t, double x, double y) { return std::sin(t) * w_shape(Trig(x, y)); }

Vec2 angular_gradient(double t, double x, double y) {
  const Vec2 g = grad_w_shape(Trig(x, y));
  const double st = std::sin(t);
  return {st * g[0], st * g[1]};
}

double angular_laplacian(double t, double x, double y) { return std::sin(t) * lap_w_shape(Trig(x, y)); }

double angular_time_derivative(double t, double x, double y) {
  return std::cos(t) * w_shape(Trig(x, y));
}

Forcings forcings(double t, double x, double y, const PhysParams& prm) {
  const Trig s(x, y);
  const double st = std::sin(t), ct = std::cos(t);

  const Vec2 us = u_shape(s);
  const Mat2 gu = grad_u_shape(s);
  const Vec2 lu = lap_u_shape(s);
  const Vec2 gp = grad_p_shape(s);
  const double ws = w_shape(s);
  const Vec2 gw = grad_w_shape(s);
  const double lw = lap_w_shape(s);

  // Quadratic terms carry sin(t)^2.
  const double adv_u1 = st * st * (us[0] * gu[0][0] + us[1] * gu[0][1]);
  const double adv_u2 = st * st * (us[0] * gu[1][0] + us[1] * gu[1][1]);
  const double adv_w = st * st * (us[0] * gw[0] + us[1] * gw[1]);

  const Vec2 rot_w = {st * gw[1], -st * gw[0]};
  const double rot_u = st * (gu[1][0] - gu[0][1]);

  Forcings out;
  out.f = {ct * us[0] + adv_u1 - prm.nu0() * st * lu[0] + st * gp[0] - 2 * prm.nu_r * rot_w[0],
           ct * us[1] + adv_u2 - prm.nu0() * st * lu[1] + st * gp[1] - 2 * prm.nu_r * rot_w[1]};
  out.g = prm.j * ct * ws + prm.j * adv_w - prm.c1() * st * lw + 4 * prm.nu_r * st * ws -
          2 * prm.nu_r * rot_u;
  return out;
}

double discrete_linf_norm(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("discrete_linf_norm: empty sequence");
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double discrete_l2_norm(std::span<const double> values, double tau) {
  if (values.empty()) throw std::invalid_argument("discrete_l2_norm: empty sequence");
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(tau * s);
}

double convergence_rate(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::invalid_argument("convergence_rate: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

}  // namespace micropolar::mms
