#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace htc {

struct TailIndexEstimate {
  double alpha_hat = 0.0;
  std::size_t k1 = 0;      // block size
  std::size_t k2 = 0;      // block count
  std::size_t n_used = 0;  // k1 * k2; trailing remainder is discarded
};

/// Subtracts the median and returns (centered vector, median).
std::pair<std::vector<double>, double> center_median(std::span<const double> x);

/// Block tail-index estimator. The first K1*K2 samples are grouped into K2
/// blocks of K1 consecutive entries and
///   1/alpha_hat = (1/log K1) [ (1/K2) sum_i log|Y_i| - (1/K) sum_i log|X_i| ]
/// with Y_i the i-th block sum. Default K1 = floor(sqrt(K)). The estimate is
/// exactly scale invariant and is not clamped: light-tailed data may produce
/// values near or above 2.
///
/// Samples are used as given. The weight-vector protocol (median centering
/// before estimation) lives in estimate_alpha_centered; totally skewed data
/// such as eigenvalue spectra must stay uncentered.
///
/// Throws DegenerateSampleError if any sample used by the estimator has zero
/// norm.
TailIndexEstimate estimate_alpha(std::span<const double> x,
                                 std::optional<std::size_t> k1 = std::nullopt);

/// Median-centers, then estimates: the protocol used for network weights.
TailIndexEstimate estimate_alpha_centered(std::span<const double> x,
                                          std::optional<std::size_t> k1 = std::nullopt);

/// Grouped-vector variant: consecutive runs of `dim` scalars form the sample
/// vectors and the Euclidean norm replaces |.|. dim = 1 coincides with
/// estimate_alpha. Provided for completeness; the scalar mode is the one
/// exercised by the experiments.
TailIndexEstimate estimate_alpha_grouped(std::span<const double> x, std::size_t dim,
                                         std::optional<std::size_t> k1 = std::nullopt);

/// Arithmetic mean of per-layer estimates (a reporting heuristic).
double mean_layer_alpha(std::span<const TailIndexEstimate> per_layer);

}  // namespace htc
