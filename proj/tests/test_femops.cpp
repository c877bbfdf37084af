#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "micropolar/assembly.hpp"
#include "micropolar/constraints.hpp"
#include "oracles.hpp"

using namespace micropolar;
using std::numbers::pi;

namespace {

struct Spaces {
  Mesh mesh;
  DofMap vel, pres, ang;
  explicit Spaces(std::size_t n)
      : mesh(build_uniform_mesh(n)),
        vel(build_dof_map(mesh, 2, 2)),
        pres(build_dof_map(mesh, 1, 1)),
        ang(build_dof_map(mesh, 2, 1)) {}
};

double sum_entries(const CsrMatrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v;
  return s;
}

std::vector<double> row_sums(const CsrMatrix& a) {
  std::vector<double> s(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (double v : a.row_values(r)) s[r] += v;
  return s;
}

// max |(X - Y)_ij| over interior velocity rows (test functions in H^1_0)
double interior_row_difference(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                               const std::vector<Eigen::Index>& rows) {
  double m = 0.0;
  for (auto r : rows) m = std::max(m, (x.row(r) - y.row(r)).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

TEST_CASE("mass matrix") {
  Spaces s(4);
  for (const DofMap* d : {&s.pres, &s.ang}) {
    const CsrMatrix M = assemble_mass(*d);
    CHECK(sum_entries(M) == doctest::Approx(4.0).epsilon(1e-13));
    const Eigen::MatrixXd D = oracle::dense(M);
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-15 * D.cwiseAbs().maxCoeff());
    CHECK(oracle::min_eigenvalue(D) > 0.0);
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
      const auto x = oracle::random_field(*d, rng, false);
      const auto mx = M * std::span<const double>(x);
      CHECK(dot(x, mx) > 0.0);
    }
  }
  // vector space: block diagonal, so total = 2 |Omega|
  CHECK(sum_entries(assemble_mass(s.vel)) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("stiffness matrix") {
  Spaces s(4);
  const CsrMatrix A = assemble_stiffness(s.ang);
  const std::vector<double> ones(A.cols(), 1.0);
  const auto a1 = A * std::span<const double>(ones);
  for (double v : a1) CHECK(std::abs(v) < 1e-13);

  const auto u = interpolate(s.ang, ScalarFunction([](double x, double) { return x; }));
  const auto au = A * std::span<const double>(u);
  CHECK(dot(u, au) == doctest::Approx(4.0).epsilon(1e-13));

  const Eigen::MatrixXd D = oracle::dense(A);
  CHECK((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-15 * D.cwiseAbs().maxCoeff());
  const auto in = oracle::interior_dofs(s.ang);
  CHECK(oracle::min_eigenvalue(oracle::submatrix(D, in, in)) > 0.0);
  // the full Neumann matrix is only semidefinite
  CHECK(std::abs(oracle::min_eigenvalue(D)) < 1e-12);
}

TEST_CASE("pressure gradient and divergence") {
  Spaces s(4);
  const CsrMatrix G = assemble_pressure_gradient(s.vel, s.pres);
  const CsrMatrix B = assemble_divergence(s.vel, s.pres);
  CHECK(G.rows() == s.vel.n_dofs());
  CHECK(G.cols() == s.pres.n_dofs());
  CHECK(B.rows() == s.pres.n_dofs());

  SUBCASE("constants are in the kernels") {
    const std::vector<double> p1(G.cols(), 1.0);
    for (double v : G * std::span<const double>(p1)) CHECK(std::abs(v) < 1e-14);
    for (int c = 0; c < 2; ++c) {
      FieldVector u(s.vel);
      for (double& v : u.component(c)) v = 1.0;
      for (double v : B * std::span<const double>(u)) CHECK(std::abs(v) < 1e-14);
    }
  }
  SUBCASE("G = -B^T on interior velocity rows") {
    const Eigen::MatrixXd g = oracle::dense(G), bt = oracle::dense(B).transpose();
    const auto in = oracle::interior_dofs(s.vel);
    CHECK(interior_row_difference(g, -bt, in) <= 1e-12 * g.cwiseAbs().maxCoeff());
    // on boundary rows the boundary term survives
    CHECK((g + bt).cwiseAbs().maxCoeff() > 1e-3);
  }
  SUBCASE("p = x gives <grad p, v> = int v_1") {
    const auto p = interpolate(s.pres, ScalarFunction([](double x, double) { return x; }));
    const auto gp = G * std::span<const double>(p);
    const auto m = row_sums(assemble_mass(s.ang));
    const std::size_t n = s.ang.n_dofs();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gp[i] == doctest::Approx(m[i]).epsilon(1e-13));
      CHECK(std::abs(gp[n + i]) < 1e-14);
    }
  }
  SUBCASE("u = (x, y) gives <q, div u> = 2 int q") {
    const auto u = interpolate(s.vel, VectorFunction([](double x, double y) { return Vec2{x, y}; }));
    const auto bu = B * std::span<const double>(u);
    const auto w = mean_weights(s.pres);
    for (std::size_t q = 0; q < bu.size(); ++q)
      CHECK(bu[q] == doctest::Approx(2.0 * w[q]).epsilon(1e-13));
  }
}

TEST_CASE("discrete inf-sup constant of the Q2/Q1 pair on n=4") {
  Spaces s(4);
  const auto r = oracle::inf_sup(s.vel, s.pres);
  CHECK(r.zero_modes == 1);
  CHECK(r.beta > 0.05);
  MESSAGE("beta(n=4) = " << r.beta);
}

TEST_CASE("Q1/Q1 has spurious pressure modes") {
  // sanity check of the oracle itself: equal-order pairs are not inf-sup stable
  const Mesh m = build_uniform_mesh(4);
  const auto r = oracle::inf_sup(build_dof_map(m, 1, 2), build_dof_map(m, 1, 1));
  CHECK(r.zero_modes > 1);
}

TEST_CASE("curl operators") {
  Spaces s(4);
  const CsrMatrix R = assemble_curl_scalar_to_vector(s.vel, s.ang);
  const CsrMatrix C = assemble_curl_vector_to_scalar(s.ang, s.vel);
  const auto m = row_sums(assemble_mass(s.ang));
  const std::size_t n = s.ang.n_dofs();

  SUBCASE("constants") {
    const std::vector<double> w1(R.cols(), 1.0);
    for (double v : R * std::span<const double>(w1)) CHECK(std::abs(v) < 1e-14);
    for (int c = 0; c < 2; ++c) {
      FieldVector u(s.vel);
      for (double& v : u.component(c)) v = 1.0;
      for (double v : C * std::span<const double>(u)) CHECK(std::abs(v) < 1e-14);
    }
  }
  SUBCASE("w = x gives rot w = (0, -1)") {
    const auto w = interpolate(s.ang, ScalarFunction([](double x, double) { return x; }));
    const auto rw = R * std::span<const double>(w);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(rw[i]) < 1e-14);
      CHECK(rw[n + i] == doctest::Approx(-m[i]).epsilon(1e-13));
    }
  }
  SUBCASE("u = (-y, x) gives rot u = 2") {
    const auto u = interpolate(s.vel, VectorFunction([](double x, double y) { return Vec2{-y, x}; }));
    const auto cu = C * std::span<const double>(u);
    for (std::size_t i = 0; i < n; ++i) CHECK(cu[i] == doctest::Approx(2.0 * m[i]).epsilon(1e-13));
  }
  SUBCASE("C = R^T on interior velocity dofs") {
    const Eigen::MatrixXd r = oracle::dense(R), ct = oracle::dense(C).transpose();
    const auto in = oracle::interior_dofs(s.vel);
    CHECK(interior_row_difference(r, ct, in) <= 1e-12 * r.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("convection operator") {
  Spaces s(8);
  std::mt19937 rng(2024);

  SUBCASE("N(0) = 0") {
    const CsrMatrix N = assemble_convection(FieldVector(s.vel), s.vel, s.vel);
    CHECK(N.max_abs() == 0.0);
  }
  SUBCASE("skew-symmetry for random pairs, vector and scalar trials") {
    const Eigen::MatrixXd Mv = oracle::dense(assemble_mass(s.vel));
    const Eigen::MatrixXd Av = oracle::dense(assemble_stiffness(s.vel));
    const Eigen::MatrixXd Ms = oracle::dense(assemble_mass(s.ang));
    const Eigen::MatrixXd As = oracle::dense(assemble_stiffness(s.ang));
    ConvectionAssembler vec_conv(s.vel, s.vel), sc_conv(s.vel, s.ang);
    for (int i = 0; i < 20; ++i) {
      const auto u = oracle::random_field(s.vel, rng);
      const auto v = oracle::random_field(s.vel, rng);
      const auto z = oracle::random_field(s.ang, rng);
      const auto nv = vec_conv.assemble(u) * std::span<const double>(v);
      const auto nz = sc_conv.assemble(u) * std::span<const double>(z);
      const double hu = oracle::h1_norm(u, Mv, Av);
      CHECK(std::abs(dot(v, nv)) <= 1e-10 * hu * std::pow(oracle::h1_norm(v, Mv, Av), 2));
      CHECK(std::abs(dot(z, nz)) <= 1e-10 * hu * std::pow(oracle::h1_norm(z, Ms, As), 2));
    }
  }
  SUBCASE("full-space operator agrees with the cached block") {
    const auto u = oracle::random_field(s.vel, rng);
    ConvectionAssembler conv(s.vel, s.vel);
    CHECK(max_abs_difference(conv.assemble(u), block_diagonal(conv.assemble_block(u), 2)) == 0.0);
    CHECK(max_abs_difference(conv.assemble(u), assemble_convection(u, s.vel, s.vel)) == 0.0);
  }
  SUBCASE("consistency with <u.grad v, z> for solenoidal u") {
    // u = (-y, x), v = (x, 0): u.grad v = (-y, 0), div u = 0
    const auto u = interpolate(s.vel, VectorFunction([](double x, double y) { return Vec2{-y, x}; }));
    const auto v = interpolate(s.vel, VectorFunction([](double x, double) { return Vec2{x, 0.0}; }));
    const auto nv = assemble_convection(u, s.vel, s.vel) * std::span<const double>(v);
    const auto ref = assemble_load(s.vel, VectorFunction([](double, double y) { return Vec2{-y, 0.0}; }));
    for (std::size_t i = 0; i < nv.size(); ++i) CHECK(nv[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
  SUBCASE("linear in u") {
    const auto u1 = oracle::random_field(s.vel, rng);
    const auto u2 = oracle::random_field(s.vel, rng);
    FieldVector u3(s.vel);
    for (std::size_t i = 0; i < u3.size(); ++i) u3[i] = 2.0 * u1[i] - 0.5 * u2[i];
    ConvectionAssembler conv(s.vel, s.ang);
    CsrMatrix lhs = conv.assemble_block(u3);
    CsrMatrix rhs = conv.assemble_block(u1);
    rhs.scale(2.0);
    rhs.add_scaled(-0.5, conv.assemble_block(u2));
    CHECK(max_abs_difference(lhs, rhs) <= 1e-13 * lhs.max_abs());
  }
  SUBCASE("space mismatch") {
    const Spaces other(4);
    CHECK_THROWS_AS(assemble_convection(FieldVector(other.vel), s.vel, s.vel), std::invalid_argument);
    CHECK_THROWS_AS(assemble_convection(FieldVector(s.ang), s.vel, s.ang), std::invalid_argument);
  }
}

TEST_CASE("projection and interpolation") {
  SUBCASE("polynomials in the space are reproduced") {
    Spaces s(3);
    ScalarFunction f = [](double x, double y) { return x * x * y - 0.5 * x * y * y + y; };
    const auto p = l2_project(f, s.ang);
    const auto i = interpolate(s.ang, f);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(p[k] == doctest::Approx(i[k]).epsilon(1e-10));
  }
  SUBCASE("zero function") {
    Spaces s(3);
    const auto p = l2_project(ScalarFunction([](double, double) { return 0.0; }), s.ang);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(p[k] == 0.0);
  }
  SUBCASE("projection beats interpolation and converges at third order") {
    ScalarFunction f = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    VectorFunction g = [](double x, double y) {
      return Vec2{pi * std::cos(pi * x) * std::sin(pi * y), pi * std::sin(pi * x) * std::cos(pi * y)};
    };
    double prev = 0.0;
    for (std::size_t n : {8u, 16u}) {
      const Spaces s(n);
      const double ep = error_norms(l2_project(f, s.ang), s.ang, f, g).l2;
      const double ei = error_norms(interpolate(s.ang, f), s.ang, f, g).l2;
      CHECK(ep <= ei);
      if (prev > 0.0) CHECK(std::log2(prev / ep) > 2.8);
      prev = ep;
    }
  }
}

TEST_CASE("error norms") {
  Spaces s(4);
  SUBCASE("zero against zero") {
    const auto e = error_norms(FieldVector(s.ang), s.ang, ScalarFunction{}, VectorFunction{});
    CHECK(e.l2 == 0.0);
    CHECK(e.h1_seminorm == 0.0);
  }
  SUBCASE("interpolated polynomials have no error") {
    ScalarFunction f = [](double x, double y) { return x * x * y * y - 3 * x * y + 1; };
    VectorFunction g = [](double x, double y) { return Vec2{2 * x * y * y - 3 * y, 2 * x * x * y - 3 * x}; };
    const auto e = error_norms(interpolate(s.ang, f), s.ang, f, g);
    CHECK(e.l2 < 1e-12);
    CHECK(e.h1_seminorm < 1e-12);
  }
  SUBCASE("sin(pi x) sin(pi y) against zero") {
    ScalarFunction f = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    VectorFunction g = [](double x, double y) {
      return Vec2{pi * std::cos(pi * x) * std::sin(pi * y), pi * std::sin(pi * x) * std::cos(pi * y)};
    };
    const auto e = error_norms(FieldVector(s.ang), s.ang, f, g);
    CHECK(e.l2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e.h1_seminorm == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-10));
  }
  SUBCASE("vector fields") {
    VectorFunction u = [](double x, double y) { return Vec2{x * y, y * y}; };
    TensorFunction gu = [](double x, double y) { return Mat2{{{y, x}, {0.0, 2 * y}}}; };
    const auto e = error_norms(interpolate(s.vel, u), s.vel, u, gu);
    CHECK(e.l2 < 1e-12);
    CHECK(e.h1_seminorm < 1e-12);
    // ||(xy, y^2)||^2 = 4/9 + 4/5
    const auto z = error_norms(FieldVector(s.vel), s.vel, u, gu);
    CHECK(z.l2 == doctest::Approx(std::sqrt(4.0 / 9.0 + 4.0 / 5.0)).epsilon(1e-12));
  }
}

TEST_CASE("load vectors") {
  Spaces s(4);
  const auto one = assemble_load(s.ang, ScalarFunction([](double, double) { return 1.0; }));
  double total = 0.0;
  for (double v : one) total += v;
  CHECK(total == doctest::Approx(4.0).epsilon(1e-13));
  const auto zero = assemble_load(s.vel, VectorFunction{});
  for (double v : zero) CHECK(v == 0.0);
}
