#include "htc/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "htc/errors.hpp"
#include "htc/svd.hpp"

namespace htc {

std::size_t ceil_count(double k) {
  if (!(k >= 0.0)) throw ParameterError("kept count must be >= 0");
  const double r = std::nearbyint(k);
  if (std::abs(k - r) < 1e-6) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(k));
}

namespace {

// Indices sorted by (|x| descending, index ascending) plus suffix sums of
// |x|^p along that order. suffix[k] is the p-th power of the error left after
// keeping the k largest entries; suffix[d] == 0 exactly.
struct MagnitudeProfile {
  std::vector<std::size_t> order;
  std::vector<double> suffix;
  double total = 0.0;

  double error_at(std::size_t kept, double p) const {
    if (total == 0.0) throw DomainError("relative error undefined: ||x||_p = 0");
    return std::pow(suffix[std::min(kept, order.size())] / total, 1.0 / p);
  }
};

MagnitudeProfile magnitude_profile(std::span<const double> x, double p) {
  if (x.empty()) throw DomainError("pruning an empty vector");
  if (!(p > 0.0)) throw ParameterError("norm order p must be > 0");
  MagnitudeProfile mp;
  const std::size_t d = x.size();
  mp.order.resize(d);
  std::iota(mp.order.begin(), mp.order.end(), std::size_t{0});
  std::sort(mp.order.begin(), mp.order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(x[a]);
    const double mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  mp.suffix.assign(d + 1, 0.0);
  long double acc = 0.0L;
  for (std::size_t i = d; i-- > 0;) {
    acc += std::pow(std::abs(x[mp.order[i]]), static_cast<long double>(p));
    mp.suffix[i] = static_cast<double>(acc);
  }
  mp.total = mp.suffix[0];
  return mp;
}

}  // namespace

PruneResult k_best(std::span<const double> x, double k, double p) {
  const auto mp = magnitude_profile(x, p);
  const std::size_t d = x.size();
  const std::size_t kept_n = std::min(ceil_count(k), d);

  PruneResult r;
  r.p = p;
  r.pruned.assign(d, 0.0);
  r.kept.assign(d, 0);
  for (std::size_t i = 0; i < kept_n; ++i) {
    const std::size_t idx = mp.order[i];
    r.pruned[idx] = x[idx];
    r.kept[idx] = 1;
  }
  r.kappa = static_cast<double>(kept_n) / static_cast<double>(d);
  r.rel_error = mp.error_at(kept_n, p);
  return r;
}

double relative_lp_error(std::span<const double> x, std::span<const double> xhat,
                         double p) {
  if (x.size() != xhat.size()) throw DomainError("relative_lp_error length mismatch");
  if (x.empty()) throw DomainError("relative_lp_error: empty input");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = xhat[i] - x[i];
  const double denom = norm_p(x, p);
  if (denom == 0.0) throw DomainError("relative_lp_error: ||x||_p = 0");
  return norm_p(diff, p) / denom;
}

std::vector<double> k_best_error_profile(std::span<const double> x, double p,
                                         std::span<const std::size_t> kept_counts) {
  const auto mp = magnitude_profile(x, p);
  std::vector<double> out;
  out.reserve(kept_counts.size());
  for (std::size_t k : kept_counts) out.push_back(mp.error_at(k, p));
  return out;
}

double min_kappa(std::span<const double> x, double epsilon, double p) {
  if (!(epsilon >= 0.0)) throw ParameterError("min_kappa: epsilon must be >= 0");
  const auto mp = magnitude_profile(x, p);
  const std::size_t d = x.size();
  if (mp.total == 0.0) throw DomainError("min_kappa: ||x||_p = 0");

  // error_at is nonincreasing in the kept count, so binary search is exact.
  std::size_t lo = 0, hi = d;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (mp.error_at(mid, p) <= epsilon) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return static_cast<double>(lo) / static_cast<double>(d);
}

std::vector<double> compress_curve(std::span<const double> x, double p,
                                   std::span<const double> kappa_grid) {
  const auto mp = magnitude_profile(x, p);
  const std::size_t d = x.size();
  std::vector<double> out;
  out.reserve(kappa_grid.size());
  for (double kappa : kappa_grid) {
    if (!(kappa > 0.0) || !(kappa <= 1.0)) {
      throw ParameterError("compress_curve: kappa grid values must lie in (0, 1]");
    }
    const std::size_t kept = std::min(ceil_count(kappa * static_cast<double>(d)), d);
    out.push_back(mp.error_at(kept, p));
  }
  return out;
}

NetPruneResult global_magnitude_prune(const FcnWeights& net, double kappa, double p) {
  if (net.layers.empty()) throw DomainError("global_magnitude_prune: empty network");
  if (!(kappa > 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("global_magnitude_prune: kappa must lie in (0, 1]");
  }
  const std::vector<double> flat = net.flatten();
  PruneResult r = k_best(flat, kappa * static_cast<double>(flat.size()), p);

  NetPruneResult out;
  out.kept = std::move(r.kept);
  out.kappa = r.kappa;
  out.rel_error = r.rel_error;
  out.p = p;
  const auto shapes = net.shapes();
  out.pruned = FcnWeights::unflatten(r.pruned, shapes);
  return out;
}

std::vector<PruneResult> layerwise_magnitude_prune(const FcnWeights& net,
                                                   std::span<const double> kappas,
                                                   double p) {
  if (net.layers.empty()) throw DomainError("layerwise_magnitude_prune: empty network");
  if (kappas.size() != net.layers.size()) {
    throw ParameterError("layerwise_magnitude_prune: one kappa per layer required");
  }
  std::vector<PruneResult> out;
  out.reserve(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (!(kappas[l] > 0.0) || !(kappas[l] <= 1.0)) {
      throw ParameterError("layerwise_magnitude_prune: kappa must lie in (0, 1]");
    }
    const auto data = net.layers[l].data();
    out.push_back(k_best(data, kappas[l] * static_cast<double>(data.size()), p));
  }
  return out;
}

FcnWeights assemble_layers(const FcnWeights& shape_ref,
                           std::span<const PruneResult> per_layer) {
  if (per_layer.size() != shape_ref.layers.size()) {
    throw DomainError("assemble_layers: layer count mismatch");
  }
  FcnWeights net;
  net.layers.reserve(per_layer.size());
  for (std::size_t l = 0; l < per_layer.size(); ++l) {
    const auto& m = shape_ref.layers[l];
    if (per_layer[l].pruned.size() != m.size()) {
      throw DomainError("assemble_layers: layer size mismatch");
    }
    net.layers.emplace_back(m.rows(), m.cols(), per_layer[l].pruned);
  }
  return net;
}

MatrixPruneResult node_prune(const Matrix& w, double kappa, double p) {
  if (w.rows() == 0 || w.cols() == 0) throw DomainError("node_prune: empty matrix");
  if (!(p > 0.0)) throw ParameterError("node_prune: norm order p must be > 0");
  if (!(kappa > 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("node_prune: kappa must lie in (0, 1]");
  }
  const std::size_t cols = w.cols();

  std::vector<double> col_pow(cols, 0.0);  // ||column||_p ^ p
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    for (std::size_t j = 0; j < cols; ++j) {
      col_pow[j] += std::pow(std::abs(row[j]), p);
    }
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (col_pow[a] != col_pow[b]) return col_pow[a] > col_pow[b];
    return a < b;
  });

  const std::size_t kept_n = std::min(ceil_count(kappa * static_cast<double>(cols)), cols);

  MatrixPruneResult r;
  r.p = p;
  r.kept.assign(cols, 0);
  for (std::size_t i = 0; i < kept_n; ++i) r.kept[order[i]] = 1;

  r.pruned = w;
  long double total = 0.0L, lost = 0.0L;
  for (std::size_t j = 0; j < cols; ++j) {
    total += col_pow[j];
    if (!r.kept[j]) {
      lost += col_pow[j];
      for (std::size_t i = 0; i < w.rows(); ++i) r.pruned(i, j) = 0.0;
    }
  }
  if (total == 0.0L) throw DomainError("node_prune: ||W||_p = 0");

  r.kappa = static_cast<double>(kept_n) / static_cast<double>(cols);
  r.param_kappa = r.kappa;
  r.rel_error = static_cast<double>(std::pow(lost / total, 1.0L / p));
  return r;
}

MatrixPruneResult svd_prune(const Matrix& w, double kappa) {
  if (w.rows() == 0 || w.cols() == 0) throw DomainError("svd_prune: empty matrix");
  if (!w.all_finite()) throw DomainError("svd_prune: matrix has non-finite entries");
  if (!(kappa > 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("svd_prune: kappa must lie in (0, 1]");
  }
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  const std::size_t n_sv = std::min(rows, cols);

  const SvdResult svd = jacobi_svd(w);

  // The conceptual singular value vector has length cols (eigenvalues of
  // W^T W); entries past min(rows, cols) are exact zeros.
  const std::size_t kept_conceptual =
      std::min(ceil_count(kappa * static_cast<double>(cols)), cols);
  const std::size_t rank_kept = std::min(kept_conceptual, n_sv);

  MatrixPruneResult r;
  r.p = 2.0;
  r.kept.assign(cols, 0);
  for (std::size_t i = 0; i < kept_conceptual; ++i) r.kept[i] = 1;

  r.pruned = Matrix(rows, cols);
  for (std::size_t k = 0; k < rank_kept; ++k) {
    const double s = svd.singular_values[k];
    if (s == 0.0) break;
    for (std::size_t i = 0; i < rows; ++i) {
      const double us = svd.u(i, k) * s;
      if (us == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) r.pruned(i, j) += us * svd.v(j, k);
    }
  }

  const double denom = w.frobenius_norm();
  if (denom == 0.0) throw DomainError("svd_prune: ||W|| = 0");
  long double diff = 0.0L;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = r.pruned(i, j) - w(i, j);
      diff += static_cast<long double>(d) * d;
    }
  }
  r.rel_error = static_cast<double>(std::sqrt(diff)) / denom;
  r.kappa = static_cast<double>(kept_conceptual) / static_cast<double>(cols);
  r.param_kappa = static_cast<double>(rank_kept) *
                  static_cast<double>(rows + cols + 1) /
                  static_cast<double>(rows * cols);
  return r;
}

EigenSpectrum eigen_spectrum(const Matrix& w, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw ParameterError("eigen_spectrum: alpha must lie in (0, 2)");
  }
  if (w.rows() == 0 || w.cols() == 0) throw DomainError("eigen_spectrum: empty matrix");
  const double expo = 2.0 / alpha;
  const double scale = std::pow(static_cast<double>(w.rows()), -expo);

  Matrix g = gram(w);
  for (double& v : g.data()) v *= scale;

  EigenSpectrum spec;
  spec.normalization = expo;
  spec.lambdas = symmetric_eigenvalues(std::move(g));
  // W^T W is positive semidefinite; clip the rounding-level negatives.
  for (double& l : spec.lambdas) l = std::max(l, 0.0);
  return spec;
}

}  // namespace htc
