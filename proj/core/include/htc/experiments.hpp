#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "htc/matrix.hpp"
#include "htc/network.hpp"
#include "htc/pruning.hpp"
#include "htc/random.hpp"

namespace htc {

/// Correlation structure of a synthetic stable weight matrix:
///   independent       - entries i.i.d. SaS(alpha)
///   column_correlated - columns i.i.d. elliptic SaS vectors
///   fully_correlated  - the whole matrix is one elliptic SaS vector
enum class SynthMode { independent, column_correlated, fully_correlated };

/// Samples a rows x cols matrix for the requested mode. alpha = 2 degenerates
/// to i.i.d. Gaussian for every mode (the elliptic law at alpha = 2 is the
/// product Gaussian).
Matrix synth_weight_matrix(double alpha, std::size_t rows, std::size_t cols,
                           SynthMode mode, RngSeed seed);

struct AlphaPruningSpec {
  std::vector<double> alphas;
  std::size_t rows = 500;
  std::size_t cols = 500;
  double epsilon = 0.1;
  double p = 2.0;
  std::size_t seeds = 10;
  RngSeed seed{};
};

struct AlphaPruningRow {
  double alpha = 0.0;
  double pruning_ratio = 0.0;  // median over seeds of 1 - min_kappa
};

/// Achievable pruning ratio at relative error <= epsilon per grid alpha.
std::vector<AlphaPruningRow> alpha_vs_pruning(const AlphaPruningSpec& spec,
                                              SynthMode mode);

/// Deterministic LePage compression error for one exponential partial-sum
/// draw Gamma_1 < ... < Gamma_d:
///   eps_p = (sum_{l > ceil(kappa d)} Gamma_l^(-p/alpha) / sum_l Gamma_l^(-p/alpha))^(1/p).
/// Strictly increasing in alpha for every fixed draw.
double lepage_epsilon(double alpha, std::span<const double> gammas, double kappa,
                      double p);

struct DimScalingSpec {
  double alpha = 1.7;
  double p = 2.0;
  double kappa = 0.1;
  std::vector<std::size_t> dims;
  std::size_t seeds = 20;
  RngSeed seed{};
};

struct DimScalingRow {
  std::size_t dim = 0;
  double median_rel_error = 0.0;
};

/// Median k-best error at fixed kappa across dimensions (i.i.d. SaS entries;
/// alpha = 2 gives the Gaussian contrast that does not decay).
std::vector<DimScalingRow> dim_scaling(const DimScalingSpec& spec);

/// Gaussian linear regression trained with the plain SGD recursion; targets
/// are pure noise so the stationary fluctuations dominate the coordinates.
struct LinearRegressionSpec {
  std::size_t dim = 100;
  std::size_t n = 1000;
  double noise = 1.0;
};

struct LinearSgdOutcome {
  std::vector<double> tail_average;   // mean iterate over the tail window
  std::vector<double> final_iterate;  // last iterate of the tail window
  std::vector<double> least_squares;  // minimizer of the run's empirical risk
  bool diverged = false;
};

/// Runs `iters` SGD steps from w = 0 and then averages `tail_iters` further
/// iterates. Minibatches are drawn with replacement.
LinearSgdOutcome train_linear_regression(const LinearRegressionSpec& spec, double eta,
                                         std::size_t batch, std::size_t iters,
                                         std::size_t tail_iters, RngSeed seed);

struct EtaBSpec {
  std::vector<std::pair<double, std::size_t>> grid;  // (eta, batch)
  LinearRegressionSpec problem{};
  std::size_t iters = 6000;
  std::size_t tail_iters = 1000;
  std::size_t seeds = 240;  // independent runs per grid point
  RngSeed seed{};
};

struct EtaBRow {
  double eta = 0.0;
  std::size_t batch = 0;
  double eta_over_b = 0.0;
  double mean_alpha_hat = 0.0;  // ensemble estimate over non-divergent runs
  std::size_t diverged = 0;
  std::size_t seeds = 0;
};

/// Tail index of the SGD stationary fluctuations per (eta, b) point. Each run
/// contributes the coordinates of (ergodic tail average - least squares
/// solution); runs are pooled coordinate-major so that block sums mix
/// independent runs. A single cross-section cannot resolve the index because
/// the estimator is scale invariant and one draw shares one radius.
/// Run streams derive from the grid-point content, so duplicated grid points
/// reproduce identical rows. Throws NumericError if every run diverged.
std::vector<EtaBRow> eta_b_sweep(const EtaBSpec& spec);

/// Synthetic two-class Gaussian mixture with means +/- mu; feature_bound is
/// set to the realized maximum norm.
Dataset make_gaussian_mixture(std::size_t n, std::size_t dim, double separation,
                              RngSeed seed);

enum class PruneScheme { global_magnitude, layerwise_magnitude, svd, node };

/// Median centering, pruning, median restore, exactly in that order; the
/// centering statistic is the median of the parameter group being pruned
/// (whole network for the global scheme, one layer otherwise).
FcnWeights prune_with_protocol(const FcnWeights& net, PruneScheme scheme, double kappa,
                               double p = 2.0);

struct PruneAccuracyRow {
  std::size_t net_id = 0;
  double alpha_hat = 0.0;      // mean over per-layer estimates
  double kappa = 0.0;
  double pruning_ratio = 0.0;  // 1 - kappa
  double rel_accuracy = 0.0;
};

std::vector<PruneAccuracyRow> prune_accuracy_sweep(std::span<const FcnWeights> nets,
                                                   PruneScheme scheme,
                                                   std::span<const double> kappa_grid,
                                                   const Dataset& test, double p = 2.0);

/// Mean per-layer tail-index estimate of a network's weights.
double net_mean_alpha(const FcnWeights& net);

}  // namespace htc
