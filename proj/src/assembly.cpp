#include "micropolar/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace micropolar {

namespace {

struct CellGeometry {
  double h;
  double det;    // Jacobian determinant of the reference map
  double scale;  // d(xi)/dx
};

CellGeometry geometry(const DofMap& space) {
  const double h = space.h();
  return {h, 0.25 * h * h, 2.0 / h};
}

void require_same_mesh(const DofMap& a, const DofMap& b, const char* who) {
  if (!a.same_mesh(b)) throw std::invalid_argument(std::string(who) + ": spaces on different meshes");
}

void require_components(const DofMap& space, int components, const char* who) {
  if (space.components() != components)
    throw std::invalid_argument(std::string(who) + ": expected a space with " +
                                std::to_string(components) + " component(s)");
}

int mixed_quadrature_degree(const DofMap& a, const DofMap& b) {
  return default_quadrature_degree(std::max(a.order(), b.order()));
}

/// Scatters one element matrix (row-major, test.dofs_per_cell x trial.dofs_per_cell)
/// into every cell.
CsrMatrix scatter_uniform(const DofMap& test, const DofMap& trial, const std::vector<double>& local) {
  CsrMatrix m(build_pattern(test, trial));
  const std::size_t nr = test.dofs_per_cell(), nc = trial.dofs_per_cell();
  for (std::size_t c = 0; c < test.n_cells(); ++c) {
    const auto rows = test.cell_dofs(c);
    const auto cols = trial.cell_dofs(c);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        const double v = local[i * nc + j];
        if (v != 0.0) m.add(rows[i], cols[j], v);
      }
  }
  return m;
}

Vec2 physical_point(const DofMap& space, std::size_t cell, const Vec2& ref) {
  const Vec2 o = space.cell_origin(cell);
  const double h = space.h();
  return {o[0] + 0.5 * (ref[0] + 1.0) * h, o[1] + 0.5 * (ref[1] + 1.0) * h};
}

CsrMatrix assemble_scalar_mass(const DofMap& s) {
  const auto rule = quadrature_rule(default_quadrature_degree(s.order()));
  const auto t = tabulate(s.order(), rule);
  const auto geo = geometry(s);
  const std::size_t n = t.n_local;
  std::vector<double> local(n * n, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        local[i * n + j] += rule.weights[q] * geo.det * t.phi(q, i) * t.phi(q, j);
  return scatter_uniform(s, s, local);
}

CsrMatrix assemble_scalar_stiffness(const DofMap& s) {
  const auto rule = quadrature_rule(default_quadrature_degree(s.order()));
  const auto t = tabulate(s.order(), rule);
  const auto geo = geometry(s);
  const double f = geo.det * geo.scale * geo.scale;
  const std::size_t n = t.n_local;
  std::vector<double> local(n * n, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        local[i * n + j] += rule.weights[q] * f *
                            (t.dphi_xi(q, i) * t.dphi_xi(q, j) + t.dphi_eta(q, i) * t.dphi_eta(q, j));
  return scatter_uniform(s, s, local);
}

}  // namespace

std::shared_ptr<const SparsityPattern> build_pattern(const DofMap& test, const DofMap& trial) {
  require_same_mesh(test, trial, "build_pattern");
  std::vector<std::vector<std::size_t>> rows(test.n_dofs());
  for (auto& r : rows) r.reserve(trial.dofs_per_cell() * 2);
  for (std::size_t c = 0; c < test.n_cells(); ++c) {
    const auto cols = trial.cell_dofs(c);
    for (std::size_t r : test.cell_dofs(c)) rows[r].insert(rows[r].end(), cols.begin(), cols.end());
  }
  return SparsityPattern::from_rows(trial.n_dofs(), std::move(rows));
}

CsrMatrix assemble_mass(const DofMap& space) {
  if (space.components() == 1) return assemble_scalar_mass(space);
  return block_diagonal(assemble_scalar_mass(space.scalar_space()), space.components());
}

CsrMatrix assemble_stiffness(const DofMap& space) {
  if (space.components() == 1) return assemble_scalar_stiffness(space);
  return block_diagonal(assemble_scalar_stiffness(space.scalar_space()), space.components());
}

CsrMatrix assemble_pressure_gradient(const DofMap& velocity, const DofMap& pressure) {
  require_same_mesh(velocity, pressure, "assemble_pressure_gradient");
  require_components(velocity, 2, "assemble_pressure_gradient");
  require_components(pressure, 1, "assemble_pressure_gradient");
  const auto rule = quadrature_rule(mixed_quadrature_degree(velocity, pressure));
  const auto tv = tabulate(velocity.order(), rule);
  const auto tp = tabulate(pressure.order(), rule);
  const auto geo = geometry(velocity);
  const std::size_t nv = tv.n_local, np = tp.n_local, nc = np;
  std::vector<double> local(2 * nv * np, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double wq = rule.weights[q] * geo.det * geo.scale;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < np; ++b) {
        local[a * nc + b] += wq * tp.dphi_xi(q, b) * tv.phi(q, a);
        local[(nv + a) * nc + b] += wq * tp.dphi_eta(q, b) * tv.phi(q, a);
      }
  }
  return scatter_uniform(velocity, pressure, local);
}

CsrMatrix assemble_divergence(const DofMap& velocity, const DofMap& pressure) {
  require_same_mesh(velocity, pressure, "assemble_divergence");
  require_components(velocity, 2, "assemble_divergence");
  require_components(pressure, 1, "assemble_divergence");
  const auto rule = quadrature_rule(mixed_quadrature_degree(velocity, pressure));
  const auto tv = tabulate(velocity.order(), rule);
  const auto tp = tabulate(pressure.order(), rule);
  const auto geo = geometry(velocity);
  const std::size_t nv = tv.n_local, np = tp.n_local, nc = 2 * nv;
  std::vector<double> local(np * nc, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double wq = rule.weights[q] * geo.det * geo.scale;
    for (std::size_t b = 0; b < np; ++b)
      for (std::size_t a = 0; a < nv; ++a) {
        local[b * nc + a] += wq * tp.phi(q, b) * tv.dphi_xi(q, a);
        local[b * nc + nv + a] += wq * tp.phi(q, b) * tv.dphi_eta(q, a);
      }
  }
  return scatter_uniform(pressure, velocity, local);
}

CsrMatrix assemble_curl_scalar_to_vector(const DofMap& velocity, const DofMap& angular) {
  require_same_mesh(velocity, angular, "assemble_curl_scalar_to_vector");
  require_components(velocity, 2, "assemble_curl_scalar_to_vector");
  require_components(angular, 1, "assemble_curl_scalar_to_vector");
  const auto rule = quadrature_rule(mixed_quadrature_degree(velocity, angular));
  const auto tv = tabulate(velocity.order(), rule);
  const auto tw = tabulate(angular.order(), rule);
  const auto geo = geometry(velocity);
  const std::size_t nv = tv.n_local, nw = tw.n_local, nc = nw;
  std::vector<double> local(2 * nv * nw, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double wq = rule.weights[q] * geo.det * geo.scale;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nw; ++b) {
        local[a * nc + b] += wq * tw.dphi_eta(q, b) * tv.phi(q, a);
        local[(nv + a) * nc + b] -= wq * tw.dphi_xi(q, b) * tv.phi(q, a);
      }
  }
  return scatter_uniform(velocity, angular, local);
}

CsrMatrix assemble_curl_vector_to_scalar(const DofMap& angular, const DofMap& velocity) {
  require_same_mesh(velocity, angular, "assemble_curl_vector_to_scalar");
  require_components(velocity, 2, "assemble_curl_vector_to_scalar");
  require_components(angular, 1, "assemble_curl_vector_to_scalar");
  const auto rule = quadrature_rule(mixed_quadrature_degree(velocity, angular));
  const auto tv = tabulate(velocity.order(), rule);
  const auto tw = tabulate(angular.order(), rule);
  const auto geo = geometry(velocity);
  const std::size_t nv = tv.n_local, nw = tw.n_local, nc = 2 * nv;
  std::vector<double> local(nw * nc, 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double wq = rule.weights[q] * geo.det * geo.scale;
    for (std::size_t b = 0; b < nw; ++b)
      for (std::size_t a = 0; a < nv; ++a) {
        local[b * nc + a] -= wq * tw.phi(q, b) * tv.dphi_eta(q, a);
        local[b * nc + nv + a] += wq * tw.phi(q, b) * tv.dphi_xi(q, a);
      }
  }
  return scatter_uniform(angular, velocity, local);
}

ConvectionAssembler::ConvectionAssembler(const DofMap& velocity, const DofMap& trial)
    : velocity_(velocity),
      trial_block_(trial.scalar_space()),
      trial_components_(trial.components()),
      rule_(quadrature_rule(mixed_quadrature_degree(velocity, trial))),
      u_table_(tabulate(velocity.order(), rule_)),
      v_table_(tabulate(trial.order(), rule_)) {
  require_same_mesh(velocity, trial, "ConvectionAssembler");
  require_components(velocity, 2, "ConvectionAssembler");
  pattern_ = build_pattern(trial_block_, trial_block_);
  const std::size_t n = trial_block_.dofs_per_cell();
  scatter_.resize(trial_block_.n_cells() * n * n);
  for (std::size_t c = 0; c < trial_block_.n_cells(); ++c) {
    const auto dofs = trial_block_.cell_dofs(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        scatter_[(c * n + i) * n + j] = pattern_->find(dofs[i], dofs[j]);
  }
}

CsrMatrix ConvectionAssembler::assemble_block(const FieldVector& u) const {
  if (!u.lives_on(velocity_))
    throw std::invalid_argument("assemble_convection: u does not live on the velocity space");
  CsrMatrix m(pattern_);
  auto& vals = m.values();
  const auto geo = geometry(velocity_);
  const std::size_t nu = u_table_.n_local, nv = v_table_.n_local, nq = rule_.size();
  std::vector<double> u1(nq), u2(nq), div(nq), local(nv * nv);
  std::vector<double> coeff(2 * nu);

  for (std::size_t c = 0; c < velocity_.n_cells(); ++c) {
    const auto udofs = velocity_.cell_dofs(c);
    for (std::size_t a = 0; a < 2 * nu; ++a) coeff[a] = u[udofs[a]];
    for (std::size_t q = 0; q < nq; ++q) {
      double s1 = 0.0, s2 = 0.0, d = 0.0;
      for (std::size_t a = 0; a < nu; ++a) {
        s1 += coeff[a] * u_table_.phi(q, a);
        s2 += coeff[nu + a] * u_table_.phi(q, a);
        d += coeff[a] * u_table_.dphi_xi(q, a) + coeff[nu + a] * u_table_.dphi_eta(q, a);
      }
      u1[q] = s1;
      u2[q] = s2;
      div[q] = d * geo.scale;
    }
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < nq; ++q) {
      const double wq = rule_.weights[q] * geo.det;
      const double a1 = wq * u1[q] * geo.scale, a2 = wq * u2[q] * geo.scale, ad = 0.5 * wq * div[q];
      for (std::size_t j = 0; j < nv; ++j) {
        const double tj = a1 * v_table_.dphi_xi(q, j) + a2 * v_table_.dphi_eta(q, j) +
                          ad * v_table_.phi(q, j);
        for (std::size_t i = 0; i < nv; ++i) local[i * nv + j] += tj * v_table_.phi(q, i);
      }
    }
    const std::size_t* pos = &scatter_[c * nv * nv];
    for (std::size_t k = 0; k < nv * nv; ++k) vals[pos[k]] += local[k];
  }
  return m;
}

CsrMatrix ConvectionAssembler::assemble(const FieldVector& u) const {
  auto block = assemble_block(u);
  if (trial_components_ == 1) return block;
  return block_diagonal(block, trial_components_);
}

CsrMatrix assemble_convection(const FieldVector& u, const DofMap& velocity, const DofMap& trial) {
  return ConvectionAssembler(velocity, trial).assemble(u);
}

std::vector<double> assemble_load(const DofMap& space, const ScalarFunction& f, int quad_degree) {
  require_components(space, 1, "assemble_load");
  std::vector<double> load(space.n_dofs(), 0.0);
  if (!f) return load;
  const auto rule =
      quadrature_rule(quad_degree >= 0 ? quad_degree : default_quadrature_degree(space.order()));
  const auto t = tabulate(space.order(), rule);
  const auto geo = geometry(space);
  std::vector<double> fq(rule.size());
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = physical_point(space, c, rule.points[q]);
      fq[q] = rule.weights[q] * geo.det * f(x[0], x[1]);
    }
    const auto dofs = space.cell_dofs(c);
    for (std::size_t a = 0; a < t.n_local; ++a) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) s += fq[q] * t.phi(q, a);
      load[dofs[a]] += s;
    }
  }
  return load;
}

std::vector<double> assemble_load(const DofMap& space, const VectorFunction& f, int quad_degree) {
  require_components(space, 2, "assemble_load");
  std::vector<double> load(space.n_dofs(), 0.0);
  if (!f) return load;
  const auto rule =
      quadrature_rule(quad_degree >= 0 ? quad_degree : default_quadrature_degree(space.order()));
  const auto t = tabulate(space.order(), rule);
  const auto geo = geometry(space);
  const std::size_t n = t.n_local;
  std::vector<double> f1(rule.size()), f2(rule.size());
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = physical_point(space, c, rule.points[q]);
      const Vec2 v = f(x[0], x[1]);
      f1[q] = rule.weights[q] * geo.det * v[0];
      f2[q] = rule.weights[q] * geo.det * v[1];
    }
    const auto dofs = space.cell_dofs(c);
    for (std::size_t a = 0; a < n; ++a) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        s1 += f1[q] * t.phi(q, a);
        s2 += f2[q] * t.phi(q, a);
      }
      load[dofs[a]] += s1;
      load[dofs[n + a]] += s2;
    }
  }
  return load;
}

FieldVector interpolate(const DofMap& space, const ScalarFunction& f) {
  require_components(space, 1, "interpolate");
  FieldVector v(space);
  for (std::size_t i = 0; i < space.n_dofs(); ++i) {
    const Vec2 x = space.support_point(i);
    v[i] = f(x[0], x[1]);
  }
  return v;
}

FieldVector interpolate(const DofMap& space, const VectorFunction& f) {
  require_components(space, 2, "interpolate");
  FieldVector v(space);
  const std::size_t ns = space.n_scalar_dofs();
  for (std::size_t i = 0; i < ns; ++i) {
    const Vec2 x = space.support_point(i);
    const Vec2 val = f(x[0], x[1]);
    v[i] = val[0];
    v[ns + i] = val[1];
  }
  return v;
}

namespace {

FieldVector solve_mass(const DofMap& space, std::vector<double> load, const SolverControl& control) {
  const auto block = assemble_mass(space.scalar_space());
  FieldVector out(space);
  const std::size_t ns = space.n_scalar_dofs();
  for (int c = 0; c < space.components(); ++c) {
    std::span<const double> b(load.data() + static_cast<std::size_t>(c) * ns, ns);
    const auto report = cg_solve(block, b, out.component(c), control);
    if (!report.converged) throw SolverError("l2_project: mass solve failed", report);
  }
  return out;
}

}  // namespace

FieldVector l2_project(const ScalarFunction& f, const DofMap& space, const SolverControl& control) {
  return solve_mass(space, assemble_load(space, f), control);
}

FieldVector l2_project(const VectorFunction& f, const DofMap& space, const SolverControl& control) {
  return solve_mass(space, assemble_load(space, f), control);
}

ErrorNorms error_norms(const FieldVector& field, const DofMap& space, const ScalarFunction& exact,
                       const VectorFunction& exact_grad) {
  require_components(space, 1, "error_norms");
  if (!field.lives_on(space)) throw std::invalid_argument("error_norms: field/space mismatch");
  const auto rule = quadrature_rule(2 * space.order() + 4);
  const auto t = tabulate(space.order(), rule);
  const auto geo = geometry(space);
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    const auto dofs = space.cell_dofs(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double v = 0.0, gx = 0.0, gy = 0.0;
      for (std::size_t a = 0; a < t.n_local; ++a) {
        const double ca = field[dofs[a]];
        v += ca * t.phi(q, a);
        gx += ca * t.dphi_xi(q, a);
        gy += ca * t.dphi_eta(q, a);
      }
      const Vec2 x = physical_point(space, c, rule.points[q]);
      const double e = (exact ? exact(x[0], x[1]) : 0.0) - v;
      const Vec2 g = exact_grad ? exact_grad(x[0], x[1]) : Vec2{0.0, 0.0};
      const double ex = g[0] - gx * geo.scale, ey = g[1] - gy * geo.scale;
      const double wq = rule.weights[q] * geo.det;
      l2 += wq * e * e;
      h1 += wq * (ex * ex + ey * ey);
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

ErrorNorms error_norms(const FieldVector& field, const DofMap& space, const VectorFunction& exact,
                       const TensorFunction& exact_grad) {
  require_components(space, 2, "error_norms");
  if (!field.lives_on(space)) throw std::invalid_argument("error_norms: field/space mismatch");
  const auto rule = quadrature_rule(2 * space.order() + 4);
  const auto t = tabulate(space.order(), rule);
  const auto geo = geometry(space);
  const std::size_t n = t.n_local;
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    const auto dofs = space.cell_dofs(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double v[2] = {0.0, 0.0}, g[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (int comp = 0; comp < 2; ++comp)
        for (std::size_t a = 0; a < n; ++a) {
          const double ca = field[dofs[static_cast<std::size_t>(comp) * n + a]];
          v[comp] += ca * t.phi(q, a);
          g[comp][0] += ca * t.dphi_xi(q, a) * geo.scale;
          g[comp][1] += ca * t.dphi_eta(q, a) * geo.scale;
        }
      const Vec2 x = physical_point(space, c, rule.points[q]);
      const Vec2 ue = exact ? exact(x[0], x[1]) : Vec2{0.0, 0.0};
      const Mat2 ge = exact_grad ? exact_grad(x[0], x[1]) : Mat2{};
      const double wq = rule.weights[q] * geo.det;
      for (int comp = 0; comp < 2; ++comp) {
        const double e = ue[comp] - v[comp];
        l2 += wq * e * e;
        for (int d = 0; d < 2; ++d) {
          const double eg = ge[comp][d] - g[comp][d];
          h1 += wq * eg * eg;
        }
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

}  // namespace micropolar
