#include "htc/tail_index.hpp"

#include <cmath>

#include "htc/errors.hpp"
#include "htc/stats.hpp"

namespace htc {

std::pair<std::vector<double>, double> center_median(std::span<const double> x) {
  if (x.empty()) throw DomainError("center_median: empty input");
  const double m = median(x);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - m;
  return {std::move(out), m};
}

namespace {

TailIndexEstimate estimate_impl(std::span<const double> flat, std::size_t dim,
                                std::optional<std::size_t> k1_opt) {
  if (dim == 0) throw ParameterError("estimate_alpha: group dimension must be >= 1");
  if (flat.empty()) throw DomainError("estimate_alpha: empty input");

  const std::span<const double> centered = flat;
  const std::size_t n_vectors = centered.size() / dim;
  if (n_vectors == 0) throw DomainError("estimate_alpha: fewer scalars than one group");

  const std::size_t k1 =
      k1_opt.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n_vectors)))));
  if (k1 < 2) throw ParameterError("estimate_alpha: block size k1 must be >= 2");
  const std::size_t k2 = n_vectors / k1;
  if (k2 < 2) {
    throw ParameterError("estimate_alpha: need at least 2*k1 samples after grouping");
  }
  const std::size_t k = k1 * k2;  // trailing remainder discarded

  const auto vec_norm = [&](std::size_t v) {
    if (dim == 1) return std::abs(centered[v]);
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double c = centered[v * dim + j];
      acc += c * c;
    }
    return std::sqrt(acc);
  };

  long double sum_log_samples = 0.0L;
  for (std::size_t v = 0; v < k; ++v) {
    const double nv = vec_norm(v);
    if (nv == 0.0) {
      throw DegenerateSampleError("estimate_alpha: sample with zero norm");
    }
    sum_log_samples += std::log(nv);
  }

  long double sum_log_blocks = 0.0L;
  std::vector<double> block(dim);
  for (std::size_t b = 0; b < k2; ++b) {
    std::fill(block.begin(), block.end(), 0.0);
    for (std::size_t j = 0; j < k1; ++j) {
      const std::size_t v = b * k1 + j;
      for (std::size_t c = 0; c < dim; ++c) block[c] += centered[v * dim + c];
    }
    double acc = 0.0;
    for (double c : block) acc += c * c;
    const double bn = std::sqrt(acc);
    if (bn == 0.0) {
      throw DegenerateSampleError("estimate_alpha: block sum with zero norm");
    }
    sum_log_blocks += std::log(bn);
  }

  const long double inv_alpha =
      (sum_log_blocks / k2 - sum_log_samples / k) / std::log(static_cast<long double>(k1));
  if (inv_alpha == 0.0L) {
    throw NumericError("estimate_alpha: estimator returned 1/alpha = 0");
  }

  TailIndexEstimate est;
  est.alpha_hat = static_cast<double>(1.0L / inv_alpha);
  est.k1 = k1;
  est.k2 = k2;
  est.n_used = k;
  return est;
}

}  // namespace

TailIndexEstimate estimate_alpha(std::span<const double> x,
                                 std::optional<std::size_t> k1) {
  return estimate_impl(x, 1, k1);
}

TailIndexEstimate estimate_alpha_centered(std::span<const double> x,
                                          std::optional<std::size_t> k1) {
  const auto [centered, med] = center_median(x);
  (void)med;
  return estimate_impl(centered, 1, k1);
}

TailIndexEstimate estimate_alpha_grouped(std::span<const double> x, std::size_t dim,
                                         std::optional<std::size_t> k1) {
  return estimate_impl(x, dim, k1);
}

double mean_layer_alpha(std::span<const TailIndexEstimate> per_layer) {
  if (per_layer.empty()) throw DomainError("mean_layer_alpha: empty list");
  long double acc = 0.0L;
  for (const auto& e : per_layer) acc += e.alpha_hat;
  return static_cast<double>(acc / per_layer.size());
}

}  // namespace htc
