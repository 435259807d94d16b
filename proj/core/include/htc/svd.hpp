#pragma once

#include <vector>

#include "htc/matrix.hpp"

namespace htc {

/// Thin SVD, A = U diag(s) V^T with s sorted nonincreasing.
/// U is rows(A) x k and V is cols(A) x k, k = min(rows, cols).
struct SvdResult {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;
  int sweeps = 0;
};

/// One-sided Jacobi SVD. Adequate and very accurate at desk scale; caps at
/// `max_sweeps` sweeps and throws NumericError with the sweep count if the
/// relative orthogonalization tolerance is not reached.
SvdResult jacobi_svd(const Matrix& a, double rel_tol = 1e-12, int max_sweeps = 100);

/// Eigenvalues of a symmetric matrix via cyclic two-sided Jacobi, sorted
/// nonincreasing. Independent of jacobi_svd so the two can cross-check.
std::vector<double> symmetric_eigenvalues(Matrix s, double rel_tol = 1e-12,
                                          int max_sweeps = 100);

}  // namespace htc
