#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace htc {

/// Inputs shared by the generalization-bound calculators.
struct BoundInputs {
  double n = 0;                            // sample count
  std::size_t d = 0;                       // total parameter count
  std::vector<std::size_t> layer_params;   // d_l per layer
  std::vector<double> layer_kappas;        // kappa_l per layer
  double epsilon = 0.0;                    // relative compression error
  double delta = 0.0;
  double tau = 0.0;
  double feature_bound = 0.0;              // B
  std::size_t depth = 0;                   // L
  double radius = 0.0;                     // R(delta)
};

/// Binary entropy in nats, with h(0) = h(1) = 0.
double binary_entropy(double kappa);

/// eps_kappa = (2 h_b(kappa) - kappa log kappa) / log n; zero at kappa = 1.
double epsilon_kappa(double kappa, double n);

/// Effective kept ratio (1/d) sum_l ceil(kappa_l d_l).
double effective_kappa(const BoundInputs& in);

/// Empirical surrogate for R(delta) = inf { R : P(||w|| >= R) <= delta }:
/// the k-th ascending order statistic with k = N + 1 - floor(delta N),
/// clamped to [1, N] (the smallest sample whose empirical exceedance
/// probability is <= delta).
double r_quantile(std::span<const double> norms, double delta);

/// Closed-form bound on R(delta) for i.i.d. normalized stable layers:
/// 3 sigma sqrt(d) (4d/delta)^(1/alpha). Valid only while
/// delta < 2 d (2 - alpha_max)^alpha; violations throw PreconditionError.
double stable_norm_bound(double sigma, std::size_t d, double alpha, double alpha_max,
                         double delta);

/// L(tau, delta) = sqrt(2) B L (2 R / sqrt(L))^(L-1) / tau.
double lipschitz_coeff(double tau, double radius, double feature_bound,
                       std::size_t depth);

/// Output perturbation bound after layerwise-relative weight perturbations:
/// B [prod(1 + eps_l) - 1] prod ||w_l||.
double perturbation_bound(std::span<const double> layer_norms,
                          std::span<const double> layer_eps, double feature_bound);

/// Particular form with uniform eps and ||w|| <= R:
/// B [(1 + eps)^L - 1] (R/sqrt(L))^L.
double perturbation_bound_uniform(double eps, double radius, std::size_t depth,
                                  double feature_bound);

/// Generalization bound for the pruned network. Requires n/log(n) >= 10 L.
/// failure_prob reports the probability-side terms 2 exp(-kappa d / 2) + delta
/// (the compressibility slack is not an input); it is reported, not verified.
struct PrunedBound {
  double bound = 0.0;       // empirical margin risk + complexity
  double gamma = 0.0;       // the margin gamma(delta, tau) the risk refers to
  double complexity = 0.0;  // (12 L R + sqrt(d)) sqrt((kappa + eps_kappa) log(n)/n)
  double kappa = 0.0;
  double eps_kappa = 0.0;
  double failure_prob = 0.0;
};
PrunedBound gen_bound_pruned(const BoundInputs& in, double empirical_margin_risk);

/// h_b^(1)(kappa, d) combinatorial half-entropy term.
double entropy_half_term(double kappa, std::size_t d);

/// rho_eps(kappa, d) = min(eps^(1-kappa) exp(h_b(kappa) + h_b^(1)(kappa, d)), 1).
double rho_epsilon(double eps, double kappa, std::size_t d);

/// Generalization bound for the uncompressed network. Requires
/// n/log(n) >= max(9L, 81 eps^(-2 kappa)) and d >= 10.
struct OriginalBound {
  double bound = 0.0;
  double rho = 0.0;
  double complexity = 0.0;
  double failure_prob = 0.0;  // 2 exp(-d/2) + delta, reported not verified
};
OriginalBound gen_bound_original(const BoundInputs& in, double empirical_risk_tau);

/// Specialization to i.i.d. stable layers with alpha_l in (1, 2).
struct StableBound {
  double bound = 0.0;
  double gamma = 0.0;       // tau + b_eps sigma0^L sqrt(d) / tau
  double a_coeff = 0.0;     // 6 sqrt(2) B 2^L L^(3/2)
  double b_eps = 0.0;       // sqrt(2) B ((1 + eps)^L - 1)
  double complexity = 0.0;
  double failure_prob = 0.0;  // 3 d^(-alpha_min / (2L)), reported not verified
};
StableBound gen_bound_stable(const BoundInputs& in, double sigma0,
                             std::span<const double> alphas,
                             double empirical_margin_risk);

/// Mixture scale sigma^2 = sum_l (d_l/d) (sigma_l / sigma_(alpha_l))^2 of the
/// stable-layer consistency relation, and the sigma0 it implies through
/// sigma^2 = [(4^(-1/alpha) sqrt(L) / 3) sigma0 d^(-(1/2 + 1/alpha))]^2.
double stable_scale_mixture(std::span<const double> sigmas,
                            std::span<const double> alphas,
                            std::span<const std::size_t> layer_params);
double sigma0_from_scale(double sigma_sq, double alpha_min, std::size_t depth,
                         std::size_t d);

}  // namespace htc
