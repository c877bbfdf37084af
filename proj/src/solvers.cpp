#include "micropolar/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace micropolar {

void IdentityPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  std::copy(r.begin(), r.end(), z.begin());
}

JacobiPreconditioner::JacobiPreconditioner(const CsrMatrix& a) : inv_diag_(a.diagonal()) {
  for (double& d : inv_diag_) d = (d != 0.0) ? 1.0 / d : 1.0;
}

void JacobiPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
}

Ilu0Preconditioner::Ilu0Preconditioner(const CsrMatrix& a) : lu_(a), diag_pos_(a.rows()) {
  const auto& pat = lu_.pattern();
  auto& v = lu_.values();
  const std::size_t n = lu_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    diag_pos_[i] = pat.find(i, i);
    if (diag_pos_[i] == SparsityPattern::npos)
      throw std::invalid_argument("Ilu0Preconditioner: missing diagonal entry");
  }
  std::vector<std::size_t> where(n, SparsityPattern::npos);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = pat.row_offsets[i], end = pat.row_offsets[i + 1];
    for (std::size_t k = begin; k < end; ++k) where[pat.columns[k]] = k;
    for (std::size_t k = begin; k < end && pat.columns[k] < i; ++k) {
      const std::size_t col = pat.columns[k];
      const double pivot = v[diag_pos_[col]];
      if (pivot == 0.0) throw std::runtime_error("Ilu0Preconditioner: zero pivot");
      v[k] /= pivot;
      const double factor = v[k];
      for (std::size_t m = diag_pos_[col] + 1; m < pat.row_offsets[col + 1]; ++m) {
        const std::size_t pos = where[pat.columns[m]];
        if (pos != SparsityPattern::npos) v[pos] -= factor * v[m];
      }
    }
    for (std::size_t k = begin; k < end; ++k) where[pat.columns[k]] = SparsityPattern::npos;
  }
}

void Ilu0Preconditioner::apply(std::span<const double> r, std::span<double> z) const {
  const auto& pat = lu_.pattern();
  const auto& v = lu_.values();
  const std::size_t n = lu_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    for (std::size_t k = pat.row_offsets[i]; k < diag_pos_[i]; ++k) s -= v[k] * z[pat.columns[k]];
    z[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t k = diag_pos_[i] + 1; k < pat.row_offsets[i + 1]; ++k)
      s -= v[k] * z[pat.columns[k]];
    z[i] = s / v[diag_pos_[i]];
  }
}

std::unique_ptr<Preconditioner> make_preconditioner(PreconditionerKind kind, const CsrMatrix& a) {
  switch (kind) {
    case PreconditionerKind::none:
      return std::make_unique<IdentityPreconditioner>();
    case PreconditionerKind::jacobi:
      return std::make_unique<JacobiPreconditioner>(a);
    case PreconditionerKind::ilu0:
      return std::make_unique<Ilu0Preconditioner>(a);
  }
  throw std::invalid_argument("make_preconditioner: unknown kind");
}

namespace {

void remove_mean(std::span<double> v) {
  if (v.empty()) return;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

void residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x,
              std::span<double> r) {
  a.multiply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

void check_dims(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                const char* who) {
  if (a.rows() != a.cols() || b.size() != a.rows() || x.size() != a.rows())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b_in, std::span<double> x,
                     const SolverControl& control, const Preconditioner& precond,
                     Nullspace nullspace) {
  check_dims(a, b_in, x, "cg_solve");
  const bool deflate = nullspace == Nullspace::constants;
  const std::size_t n = a.rows();
  std::vector<double> b(b_in.begin(), b_in.end());
  if (deflate) {
    remove_mean(b);
    remove_mean(x);
  }

  SolveReport report;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    report.converged = true;
    return report;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  auto true_residual = [&] {
    residual(a, b, x, r);
    if (deflate) remove_mean(r);
    return norm2(r) / bnorm;
  };
  auto precondition = [&] {
    precond.apply(r, z);
    if (deflate) remove_mean(z);
  };

  double rel = true_residual();
  precondition();
  p = z;
  double rz = dot(r, z);
  while (rel > control.rel_tol && report.iterations < control.max_iterations) {
    a.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0) || !std::isfinite(pq)) {
      report.message = "breakdown: p^T A p = " + std::to_string(pq);
      break;
    }
    const double alpha = rz / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    ++report.iterations;
    rel = norm2(r) / bnorm;
    if (rel <= control.rel_tol) {
      // Accept only if the recomputed residual agrees; otherwise restart from it.
      rel = true_residual();
      if (rel <= control.rel_tol) break;
      precondition();
      p = z;
      rz = dot(r, z);
      continue;
    }
    precondition();
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.relative_residual = true_residual();
  report.converged = report.relative_residual <= control.rel_tol;
  if (!report.converged && report.message.empty())
    report.message = "iteration limit reached";
  return report;
}

SolveReport gmres_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                        const SolverControl& control, const Preconditioner& precond) {
  check_dims(a, b, x, "gmres_solve");
  const std::size_t n = a.rows();
  const std::size_t m = std::max<std::size_t>(1, control.restart);
  SolveReport report;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    report.converged = true;
    return report;
  }

  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
  std::vector<double> h((m + 1) * m), cs(m), sn(m), g(m + 1), y(m), w(n), z(n), r(n);
  auto hij = [&](std::size_t i, std::size_t j) -> double& { return h[i * m + j]; };

  while (true) {
    residual(a, b, x, r);
    const double beta = norm2(r);
    report.relative_residual = beta / bnorm;
    if (report.relative_residual <= control.rel_tol) break;
    if (report.iterations >= control.max_iterations) break;
    if (!std::isfinite(beta)) {
      report.message = "non-finite residual";
      break;
    }

    for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::size_t k = 0;
    bool stop = false;
    for (; k < m && report.iterations < control.max_iterations; ++k) {
      precond.apply(basis[k], z);
      a.multiply(z, w);
      ++report.iterations;
      for (std::size_t i = 0; i <= k; ++i) {
        hij(i, k) = dot(w, basis[i]);
        axpy(-hij(i, k), basis[i], w);
      }
      const double wnorm = norm2(w);
      hij(k + 1, k) = wnorm;
      for (std::size_t i = 0; i < k; ++i) {
        const double t = cs[i] * hij(i, k) + sn[i] * hij(i + 1, k);
        hij(i + 1, k) = -sn[i] * hij(i, k) + cs[i] * hij(i + 1, k);
        hij(i, k) = t;
      }
      const double denom = std::hypot(hij(k, k), hij(k + 1, k));
      if (denom == 0.0) {
        report.message = "breakdown: zero Hessenberg column";
        stop = true;
        break;
      }
      cs[k] = hij(k, k) / denom;
      sn[k] = hij(k + 1, k) / denom;
      hij(k, k) = denom;
      hij(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (wnorm > 0.0)
        for (std::size_t i = 0; i < n; ++i) basis[k + 1][i] = w[i] / wnorm;
      if (std::abs(g[k + 1]) / bnorm <= control.rel_tol || wnorm == 0.0) {
        ++k;
        break;
      }
    }
    // Back substitution on the k x k triangular system.
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= hij(i, j) * y[j];
      y[i] = s / hij(i, i);
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) axpy(y[i], basis[i], w);
    precond.apply(w, z);
    axpy(1.0, z, x);
    if (stop) {
      residual(a, b, x, r);
      report.relative_residual = norm2(r) / bnorm;
      break;
    }
  }

  report.converged = report.relative_residual <= control.rel_tol;
  if (!report.converged && report.message.empty()) report.message = "iteration limit reached";
  return report;
}

SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                     const SolverControl& control, Nullspace nullspace) {
  const auto p = make_preconditioner(control.preconditioner, a);
  return cg_solve(a, b, x, control, *p, nullspace);
}

SolveReport gmres_solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                        const SolverControl& control) {
  const auto p = make_preconditioner(control.preconditioner, a);
  return gmres_solve(a, b, x, control, *p);
}

}  // namespace micropolar
