#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "htc/fcn_weights.hpp"
#include "htc/matrix.hpp"

namespace htc {

/// Result of pruning a flat parameter vector. `pruned` agrees with the input
/// exactly on kept entries and is zero elsewhere; kappa is the kept fraction;
/// rel_error = ||pruned - input||_p / ||input||_p.
struct PruneResult {
  std::vector<double> pruned;
  std::vector<std::uint8_t> kept;
  double kappa = 0.0;
  double rel_error = 0.0;
  double p = 2.0;
};

/// Result of pruning a matrix by columns or singular values. `kept` has one
/// flag per column (node pruning) or per conceptual singular value (singular
/// value pruning, length = cols). kappa counts kept units; param_kappa counts
/// kept parameters, which for singular value pruning follows the
/// rank * (rows + cols + 1) storage convention and may exceed 1.
struct MatrixPruneResult {
  Matrix pruned;
  std::vector<std::uint8_t> kept;
  double kappa = 0.0;
  double param_kappa = 0.0;
  double rel_error = 0.0;
  double p = 2.0;
};

/// Nonincreasing eigenvalues of h^(-2/alpha) W^T W, h = rows(W).
struct EigenSpectrum {
  std::vector<double> lambdas;
  double normalization = 0.0;  // the exponent 2/alpha that was applied
};

/// Ceiling with a snap: values within 1e-6 of an integer are treated as that
/// integer, so counts like kappa*d do not overshoot from floating rounding.
std::size_t ceil_count(double k);

/// k-best term approximation: keeps the ceil(k) entries of largest magnitude
/// (ties broken toward lower index), zeroes the rest. k > d acts as k = d.
PruneResult k_best(std::span<const double> x, double k, double p = 2.0);

/// ||xhat - x||_p / ||x||_p, quasi-norms p < 1 included.
double relative_lp_error(std::span<const double> x, std::span<const double> xhat,
                         double p);

/// Relative lp error of k_best at every kept-count in `kept_counts`;
/// shares one sort across the evaluations.
std::vector<double> k_best_error_profile(std::span<const double> x, double p,
                                         std::span<const std::size_t> kept_counts);

/// kappa_p(x, epsilon): minimal kept fraction k/d over integer k achieving
/// relative error <= epsilon. Exact integer binary search (the error is
/// nonincreasing in k).
double min_kappa(std::span<const double> x, double epsilon, double p);

/// Relative error at each kappa in the grid (values in (0, 1]) using k-best
/// pruning with k = kappa * d.
std::vector<double> compress_curve(std::span<const double> x, double p,
                                   std::span<const double> kappa_grid);

/// Result of pruning a whole network at once.
struct NetPruneResult {
  FcnWeights pruned;
  std::vector<std::uint8_t> kept;  // per flattened entry
  double kappa = 0.0;
  double rel_error = 0.0;
  double p = 2.0;
};

/// Concatenates all layers, keeps the kappa*d globally largest magnitudes,
/// scatters back to the layer shapes.
NetPruneResult global_magnitude_prune(const FcnWeights& net, double kappa,
                                      double p = 2.0);

/// k-best applied independently per vectorized layer with k = kappa_l * d_l.
std::vector<PruneResult> layerwise_magnitude_prune(const FcnWeights& net,
                                                   std::span<const double> kappas,
                                                   double p = 2.0);

/// Rebuilds an FcnWeights from per-layer prune results (shapes taken from
/// `shape_ref`).
FcnWeights assemble_layers(const FcnWeights& shape_ref,
                           std::span<const PruneResult> per_layer);

/// Keeps the ceil(kappa * cols) columns of largest lp norm, zeroes the rest.
MatrixPruneResult node_prune(const Matrix& w, double kappa, double p);

/// Reconstructs from the ceil(kappa * cols) largest singular values.
/// rel_error is the measured Frobenius error of the reconstruction (p = 2).
MatrixPruneResult svd_prune(const Matrix& w, double kappa);

/// Spectrum of the normalized sample covariance matrix h^(-2/alpha) W^T W.
EigenSpectrum eigen_spectrum(const Matrix& w, double alpha);

}  // namespace htc
