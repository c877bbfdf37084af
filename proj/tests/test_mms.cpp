#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fd_oracle.hpp"
#include "micropolar/mms.hpp"

using namespace micropolar;
using std::numbers::pi;

TEST_CASE("exact solution") {
  SUBCASE("vanishes at t=0") {
    for (double x : {-0.7, 0.1, 0.9})
      for (double y : {-0.3, 0.5}) {
        const auto e = mms::exact(0.0, x, y);
        CHECK(e.u[0] == 0.0);
        CHECK(e.u[1] == 0.0);
        CHECK(e.p == 0.0);
        CHECK(e.w == 0.0);
      }
  }
  SUBCASE("u and w vanish on the boundary") {
    for (double t : {0.3, 1.7, 9.0})
      for (double s : {-1.0, -0.4, 0.2, 1.0})
        for (auto [x, y] : {std::pair{-1.0, s}, {1.0, s}, {s, -1.0}, {s, 1.0}}) {
          const auto e = mms::exact(t, x, y);
          CHECK(std::abs(e.u[0]) < 1e-14);
          CHECK(std::abs(e.u[1]) < 1e-14);
          CHECK(std::abs(e.w) < 1e-14);
        }
  }
  SUBCASE("closed form at a point") {
    const double t = 0.8, x = 0.3, y = -0.45;
    const auto e = mms::exact(t, x, y);
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    CHECK(e.u[0] == doctest::Approx(pi * std::sin(t) * sx * sx * std::sin(2 * pi * y)));
    CHECK(e.u[1] == doctest::Approx(-pi * std::sin(t) * std::sin(2 * pi * x) * sy * sy));
    CHECK(e.p == doctest::Approx(std::sin(t) * std::cos(pi * x) * sy));
    CHECK(e.w == doctest::Approx(pi * std::sin(t) * sx * sx * sy * sy));
  }
  SUBCASE("divergence free at random points") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(-1, 1), dt(0, 10);
    for (int i = 0; i < 100; ++i) {
      const auto g = mms::velocity_gradient(dt(rng), d(rng), d(rng));
      CHECK(std::abs(g[0][0] + g[1][1]) <= 1e-12);
    }
  }
  SUBCASE("derivatives against finite differences") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> d(-1, 1), dt(0, 10);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
      const double t = dt(rng), x = d(rng), y = d(rng);
      const auto g = mms::velocity_gradient(t, x, y);
      for (int c = 0; c < 2; ++c) {
        CHECK(g[c][0] == doctest::Approx((mms::velocity(t, x + h, y)[c] - mms::velocity(t, x - h, y)[c]) / (2 * h)).epsilon(1e-7).scale(10));
        CHECK(g[c][1] == doctest::Approx((mms::velocity(t, x, y + h)[c] - mms::velocity(t, x, y - h)[c]) / (2 * h)).epsilon(1e-7).scale(10));
        CHECK(mms::velocity_time_derivative(t, x, y)[c] ==
              doctest::Approx((mms::velocity(t + h, x, y)[c] - mms::velocity(t - h, x, y)[c]) / (2 * h)).epsilon(1e-7).scale(10));
      }
      const auto gp = mms::pressure_gradient(t, x, y);
      CHECK(gp[0] == doctest::Approx((mms::pressure(t, x + h, y) - mms::pressure(t, x - h, y)) / (2 * h)).epsilon(1e-7).scale(10));
      CHECK(gp[1] == doctest::Approx((mms::pressure(t, x, y + h) - mms::pressure(t, x, y - h)) / (2 * h)).epsilon(1e-7).scale(10));
      const auto gw = mms::angular_gradient(t, x, y);
      CHECK(gw[0] == doctest::Approx((mms::angular(t, x + h, y) - mms::angular(t, x - h, y)) / (2 * h)).epsilon(1e-7).scale(10));
      CHECK(gw[1] == doctest::Approx((mms::angular(t, x, y + h) - mms::angular(t, x, y - h)) / (2 * h)).epsilon(1e-7).scale(10));
      CHECK(mms::angular_time_derivative(t, x, y) ==
            doctest::Approx((mms::angular(t + h, x, y) - mms::angular(t - h, x, y)) / (2 * h)).epsilon(1e-7).scale(10));
    }
  }
}

TEST_CASE("forcings") {
  PhysParams prm;
  SUBCASE("t=0 leaves only the time derivative") {
    for (double x : {-0.6, 0.25})
      for (double y : {-0.1, 0.75}) {
        const auto f = mms::forcings(0.0, x, y, prm);
        const double sx = std::sin(pi * x), sy = std::sin(pi * y);
        CHECK(f.f[0] == doctest::Approx(pi * sx * sx * std::sin(2 * pi * y)).epsilon(1e-14));
        CHECK(f.f[1] == doctest::Approx(-pi * std::sin(2 * pi * x) * sy * sy).epsilon(1e-14));
        CHECK(f.g == doctest::Approx(prm.j * pi * sx * sx * sy * sy).epsilon(1e-14));
      }
  }
  SUBCASE("without vortex viscosity the rot couplings drop out") {
    PhysParams a = prm;
    a.nu_r = 0.0;
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int i = 0; i < 20; ++i) {
      const double t = 1.3, x = d(rng), y = d(rng);
      const auto fa = mms::forcings(t, x, y, a);
      const auto ut = mms::velocity_time_derivative(t, x, y);
      const auto u = mms::velocity(t, x, y);
      const auto gu = mms::velocity_gradient(t, x, y);
      const auto lu = mms::velocity_laplacian(t, x, y);
      const auto gp = mms::pressure_gradient(t, x, y);
      for (int c = 0; c < 2; ++c)
        CHECK(fa.f[c] == doctest::Approx(ut[c] + u[0] * gu[c][0] + u[1] * gu[c][1] - a.nu * lu[c] + gp[c]));
      const auto gw = mms::angular_gradient(t, x, y);
      CHECK(fa.g == doctest::Approx(a.j * mms::angular_time_derivative(t, x, y) +
                                    a.j * (u[0] * gw[0] + u[1] * gw[1]) -
                                    a.c1() * mms::angular_laplacian(t, x, y)));
    }
  }
  SUBCASE("finite-difference residual oracle, default parameters") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-1, 1), dt(0, 10);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, oracle::fd_mismatch(dt(rng), d(rng), d(rng), prm));
    CHECK(worst <= 1e-6);
  }
  SUBCASE("finite-difference residual oracle, random parameters") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1, 1), dt(0, 10), pd(0.1, 3.0);
    for (int set = 0; set < 3; ++set) {
      PhysParams q;
      do {
        q = {pd(rng), pd(rng), pd(rng), pd(rng), pd(rng), pd(rng)};
      } while (!(q.c2() > 0.0));
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) worst = std::max(worst, oracle::fd_mismatch(dt(rng), d(rng), d(rng), q));
      CAPTURE(set);
      CHECK(worst <= 1e-6);
    }
  }
  SUBCASE("the oracle notices a wrong sign") {
    // flipping nu_r in the closed form but not in the oracle must be detected
    PhysParams q = prm;
    q.nu_r = 2.0;
    const auto fd = oracle::fd_forcings(1.1, 0.3, 0.4, q);
    PhysParams wrong = q;
    wrong.nu_r = -2.0;
    wrong.nu = q.nu + 2 * q.nu_r;  // keeps nu0 fixed, flips the couplings
    const auto cf = mms::forcings(1.1, 0.3, 0.4, wrong);
    CHECK(std::abs(cf.f[0] - fd.f[0]) > 1e-3 * fd.f_scale[0]);
  }
}

TEST_CASE("discrete time norms") {
  const std::vector<double> ones{1, 1, 1};
  CHECK(mms::discrete_l2_norm(ones, 0.5) == doctest::Approx(std::sqrt(1.5)));
  CHECK(mms::discrete_linf_norm(ones) == 1.0);
  const std::vector<double> zeros(4, 0.0);
  CHECK(mms::discrete_l2_norm(zeros, 0.1) == 0.0);
  CHECK(mms::discrete_linf_norm(zeros) == 0.0);
  for (std::size_t k = 0; k < 5; ++k) {
    std::vector<double> v(5, 0.0);
    v[k] = 2.5;
    CHECK(mms::discrete_linf_norm(v) == 2.5);
    CHECK(mms::discrete_l2_norm(v, 0.04) == doctest::Approx(0.5));
  }
  // linear scaling and monotonicity
  const std::vector<double> a{0.1, 0.3, 0.2}, b{0.2, 0.6, 0.4}, c{0.15, 0.3, 0.25};
  CHECK(mms::discrete_l2_norm(b, 0.1) == doctest::Approx(2 * mms::discrete_l2_norm(a, 0.1)));
  CHECK(mms::discrete_l2_norm(a, 0.1) <= mms::discrete_l2_norm(c, 0.1));
  CHECK(mms::discrete_linf_norm(a) <= mms::discrete_linf_norm(c));
  CHECK_THROWS_AS(mms::discrete_l2_norm(std::vector<double>{}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(mms::discrete_linf_norm(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("convergence rates") {
  CHECK(mms::convergence_rate(4.8106e-2, 1.7379e-2) == doctest::Approx(1.47).epsilon(0.005));
  CHECK(mms::convergence_rate(1.0542e+0, 4.5970e-1) == doctest::Approx(1.20).epsilon(0.005));
  CHECK(mms::convergence_rate(0.37, 0.37) == 0.0);
  CHECK(mms::convergence_rate(1.0, 0.125) == doctest::Approx(3.0));
  CHECK_THROWS_AS(mms::convergence_rate(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mms::convergence_rate(1.0, -1.0), std::invalid_argument);
}
