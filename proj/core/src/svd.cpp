#include "htc/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "htc/errors.hpp"

namespace htc {

namespace {

// One-sided Jacobi on the columns of g (m x n, m >= n), accumulating the
// right rotations into v (n x n).
int orthogonalize_columns(Matrix& g, Matrix& v, double rel_tol, int max_sweeps,
                          double frob) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  // Dot products at rounding-noise scale cannot be driven down further.
  const double abs_floor = (1e-14 * frob) * (1e-14 * frob);

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double gp = g(i, p);
          const double gq = g(i, q);
          app += gp * gp;
          aqq += gq * gq;
          apq += gp * gq;
        }
        if (app == 0.0 || aqq == 0.0) continue;
        if (std::abs(apq) <= rel_tol * std::sqrt(app * aqq)) continue;
        if (std::abs(apq) <= abs_floor) continue;

        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double gp = g(i, p);
          const double gq = g(i, q);
          g(i, p) = c * gp - s * gq;
          g(i, q) = s * gp + c * gq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        rotated = true;
      }
    }
    if (!rotated) return sweep;
  }
  throw NumericError("jacobi_svd did not converge within " +
                     std::to_string(max_sweeps) + " sweeps");
}

}  // namespace

SvdResult jacobi_svd(const Matrix& a, double rel_tol, int max_sweeps) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("jacobi_svd: empty matrix");
  if (!a.all_finite()) throw DomainError("jacobi_svd: matrix has non-finite entries");

  if (a.rows() < a.cols()) {
    SvdResult t = jacobi_svd(transpose(a), rel_tol, max_sweeps);
    std::swap(t.u, t.v);
    return t;
  }

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix g = a;
  Matrix v = Matrix::identity(n);
  SvdResult out;
  out.sweeps = (a.frobenius_norm() == 0.0)
                   ? 0
                   : orthogonalize_columns(g, v, rel_tol, max_sweeps, a.frobenius_norm());

  std::vector<double> sv(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += g(i, j) * g(i, j);
    sv[j] = std::sqrt(acc);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sv[x] > sv[y]; });

  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  out.singular_values.resize(n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.singular_values[jj] = sv[j];
    if (sv[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, jj) = g(i, j) / sv[j];
    }
    for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = v(i, j);
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(Matrix s, double rel_tol, int max_sweeps) {
  if (s.rows() != s.cols()) throw DomainError("symmetric_eigenvalues: not square");
  if (!s.all_finite()) throw DomainError("symmetric_eigenvalues: non-finite entries");
  const std::size_t n = s.rows();
  const double frob = s.frobenius_norm();
  const double off_target = rel_tol * (frob > 0.0 ? frob : 1.0);

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * s(p, q) * s(p, q);
    }
    if (std::sqrt(off) <= off_target) {
      std::vector<double> lam(n);
      for (std::size_t i = 0; i < n; ++i) lam[i] = s(i, i);
      std::sort(lam.begin(), lam.end(), std::greater<>());
      return lam;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double spq = s(p, q);
        if (spq == 0.0) continue;
        const double tau = (s(q, q) - s(p, p)) / (2.0 * spq);
        const double t =
            std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double sip = s(i, p);
          const double siq = s(i, q);
          s(i, p) = c * sip - sn * siq;
          s(i, q) = sn * sip + c * siq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double spi = s(p, i);
          const double sqi = s(q, i);
          s(p, i) = c * spi - sn * sqi;
          s(q, i) = sn * spi + c * sqi;
        }
      }
    }
  }
  throw NumericError("symmetric_eigenvalues did not converge within " +
                     std::to_string(max_sweeps) + " sweeps");
}

}  // namespace htc
