#include "htc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "htc/errors.hpp"
#include "htc/pruning.hpp"
#include "htc/stable.hpp"

namespace htc {

namespace {

std::size_t floor_count(double k) {
  if (!(k >= 0.0)) throw ParameterError("count must be >= 0");
  const double r = std::nearbyint(k);
  if (std::abs(k - r) < 1e-6) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::floor(k));
}

void check_depth_inputs(const BoundInputs& in) {
  if (in.depth < 2) throw ParameterError("bounds: depth L must be >= 2");
  if (in.d == 0) throw ParameterError("bounds: d must be positive");
  if (!(in.n >= 2.0)) throw ParameterError("bounds: n must be >= 2");
  if (!(in.tau > 0.0)) throw ParameterError("bounds: tau must be > 0");
  if (in.layer_params.size() != in.layer_kappas.size() ||
      in.layer_params.size() != in.depth) {
    throw ParameterError("bounds: one (d_l, kappa_l) pair per layer required");
  }
}

}  // namespace

double binary_entropy(double kappa) {
  if (!(kappa >= 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("binary_entropy: kappa must lie in [0, 1]");
  }
  if (kappa == 0.0 || kappa == 1.0) return 0.0;
  return -kappa * std::log(kappa) - (1.0 - kappa) * std::log(1.0 - kappa);
}

double epsilon_kappa(double kappa, double n) {
  if (!(n >= 2.0)) throw ParameterError("epsilon_kappa: n must be >= 2");
  if (!(kappa > 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("epsilon_kappa: kappa must lie in (0, 1]");
  }
  return (2.0 * binary_entropy(kappa) - kappa * std::log(kappa)) / std::log(n);
}

double effective_kappa(const BoundInputs& in) {
  if (in.layer_params.empty()) throw ParameterError("effective_kappa: no layers");
  if (in.layer_params.size() != in.layer_kappas.size()) {
    throw ParameterError("effective_kappa: one kappa per layer required");
  }
  std::size_t kept = 0, total = 0;
  for (std::size_t l = 0; l < in.layer_params.size(); ++l) {
    if (!(in.layer_kappas[l] > 0.0) || !(in.layer_kappas[l] <= 1.0)) {
      throw ParameterError("effective_kappa: kappa_l must lie in (0, 1]");
    }
    kept += ceil_count(in.layer_kappas[l] * static_cast<double>(in.layer_params[l]));
    total += in.layer_params[l];
  }
  if (total == 0) throw ParameterError("effective_kappa: zero parameters");
  return static_cast<double>(kept) / static_cast<double>(total);
}

// Upper-interpolated empirical (1-delta)-quantile: the k-th ascending order
// statistic with k = max(1, ceil(N (1 - delta))). delta -> 1 gives the
// sample minimum; a single sample is returned for any delta.
double r_quantile(std::span<const double> norms, double delta) {
  if (norms.empty()) throw DomainError("r_quantile: empty sample");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ParameterError("r_quantile: delta must lie in (0, 1)");
  }
  std::vector<double> s(norms.begin(), norms.end());
  std::sort(s.begin(), s.end());
  const std::size_t k = std::clamp<std::size_t>(
      ceil_count((1.0 - delta) * static_cast<double>(s.size())), 1, s.size());
  return s[k - 1];
}

double stable_norm_bound(double sigma, std::size_t d, double alpha, double alpha_max,
                         double delta) {
  if (!(sigma > 0.0)) throw ParameterError("stable_norm_bound: sigma must be > 0");
  if (d == 0) throw ParameterError("stable_norm_bound: d must be >= 1");
  if (!(alpha > 1.0) || !(alpha < 2.0) || !(alpha_max > 1.0) || !(alpha_max < 2.0) ||
      alpha > alpha_max) {
    throw ParameterError("stable_norm_bound: need 1 < alpha <= alpha_max < 2");
  }
  if (!(delta > 0.0)) throw ParameterError("stable_norm_bound: delta must be > 0");
  const double limit =
      2.0 * static_cast<double>(d) * std::pow(2.0 - alpha_max, alpha);
  if (!(delta < limit)) {
    throw PreconditionError(
        "stable_norm_bound requires delta < 2 d (2 - alpha_max)^alpha = " +
        std::to_string(limit));
  }
  const double dd = static_cast<double>(d);
  return 3.0 * sigma * std::sqrt(dd) * std::pow(4.0 * dd / delta, 1.0 / alpha);
}

double lipschitz_coeff(double tau, double radius, double feature_bound,
                       std::size_t depth) {
  if (!(tau > 0.0)) throw ParameterError("lipschitz_coeff: tau must be > 0");
  if (!(radius > 0.0) || !(feature_bound > 0.0) || depth < 2) {
    throw ParameterError("lipschitz_coeff: need positive R, B and depth >= 2");
  }
  const double l = static_cast<double>(depth);
  return std::numbers::sqrt2 * feature_bound * l *
         std::pow(2.0 * radius / std::sqrt(l), l - 1.0) / tau;
}

double perturbation_bound(std::span<const double> layer_norms,
                          std::span<const double> layer_eps, double feature_bound) {
  if (layer_norms.size() != layer_eps.size()) {
    throw ParameterError("perturbation_bound: norm/eps length mismatch");
  }
  if (layer_norms.empty()) throw ParameterError("perturbation_bound: no layers");
  if (!(feature_bound >= 0.0)) throw ParameterError("perturbation_bound: B must be >= 0");
  double prod_eps = 1.0;
  double prod_norm = 1.0;
  for (std::size_t l = 0; l < layer_norms.size(); ++l) {
    if (!(layer_norms[l] >= 0.0) || !(layer_eps[l] >= 0.0)) {
      throw ParameterError("perturbation_bound: norms and eps must be >= 0");
    }
    prod_eps *= 1.0 + layer_eps[l];
    prod_norm *= layer_norms[l];
  }
  return feature_bound * (prod_eps - 1.0) * prod_norm;
}

double perturbation_bound_uniform(double eps, double radius, std::size_t depth,
                                  double feature_bound) {
  if (depth == 0) throw ParameterError("perturbation_bound_uniform: depth must be >= 1");
  if (!(eps >= 0.0) || !(radius >= 0.0) || !(feature_bound >= 0.0)) {
    throw ParameterError("perturbation_bound_uniform: arguments must be >= 0");
  }
  const double l = static_cast<double>(depth);
  return feature_bound * (std::pow(1.0 + eps, l) - 1.0) *
         std::pow(radius / std::sqrt(l), l);
}

PrunedBound gen_bound_pruned(const BoundInputs& in, double empirical_margin_risk) {
  check_depth_inputs(in);
  const double logn = std::log(in.n);
  if (!(in.n / logn >= 10.0 * static_cast<double>(in.depth))) {
    throw PreconditionError("gen_bound_pruned requires n / log(n) >= 10 L");
  }
  if (!(in.epsilon >= 0.0)) throw ParameterError("gen_bound_pruned: epsilon must be >= 0");

  PrunedBound out;
  out.kappa = effective_kappa(in);
  out.eps_kappa = epsilon_kappa(out.kappa, in.n);

  const double l = static_cast<double>(in.depth);
  out.gamma = in.tau + (std::numbers::sqrt2 * in.feature_bound / in.tau) *
                           std::pow(in.radius / std::sqrt(l), l) *
                           (std::pow(1.0 + in.epsilon, l) - 1.0);

  const double lip = lipschitz_coeff(in.tau, in.radius, in.feature_bound, in.depth);
  out.complexity = (12.0 * lip * in.radius + std::sqrt(static_cast<double>(in.d))) *
                   std::sqrt((out.kappa + out.eps_kappa) * logn / in.n);
  out.bound = empirical_margin_risk + out.complexity;
  out.failure_prob =
      2.0 * std::exp(-out.kappa * static_cast<double>(in.d) / 2.0) + in.delta;
  return out;
}

double entropy_half_term(double kappa, std::size_t d) {
  if (!(kappa >= 0.0) || !(kappa <= 1.0)) {
    throw ParameterError("entropy_half_term: kappa must lie in [0, 1]");
  }
  if (d == 0) throw ParameterError("entropy_half_term: d must be >= 1");
  const double dd = static_cast<double>(d);
  const double half_up = std::ceil(dd / 2.0);
  const double kd_half = kappa * dd / 2.0;
  const double hi = binary_entropy(
      std::min(1.0, static_cast<double>(ceil_count(kd_half)) / half_up));
  const double lo = binary_entropy(
      std::min(1.0, static_cast<double>(floor_count(kd_half)) / half_up));
  return (half_up / dd) * std::max(hi, lo);
}

double rho_epsilon(double eps, double kappa, std::size_t d) {
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    throw ParameterError("rho_epsilon: eps must lie in (0, 1]");
  }
  const double raw = std::pow(eps, 1.0 - kappa) *
                     std::exp(binary_entropy(kappa) + entropy_half_term(kappa, d));
  return std::min(raw, 1.0);
}

OriginalBound gen_bound_original(const BoundInputs& in, double empirical_risk_tau) {
  check_depth_inputs(in);
  if (in.d < 10) throw PreconditionError("gen_bound_original requires d >= 10");
  if (!(in.epsilon > 0.0)) throw ParameterError("gen_bound_original: epsilon must be > 0");
  const double logn = std::log(in.n);
  const double kappa = effective_kappa(in);
  const double need = std::max(9.0 * static_cast<double>(in.depth),
                               81.0 * std::pow(in.epsilon, -2.0 * kappa));
  if (!(in.n / logn >= need)) {
    throw PreconditionError(
        "gen_bound_original requires n / log(n) >= max(9L, 81 eps^(-2 kappa))");
  }

  OriginalBound out;
  out.rho = rho_epsilon(in.epsilon, kappa, in.d);
  const double lip = lipschitz_coeff(in.tau, in.radius, in.feature_bound, in.depth);
  const double dd = static_cast<double>(in.d);
  out.complexity = std::max(2.0, 24.0 * out.rho * lip * in.radius / std::sqrt(dd)) *
                   std::sqrt(dd * logn / in.n);
  out.bound = empirical_risk_tau + out.complexity;
  out.failure_prob = 2.0 * std::exp(-dd / 2.0) + in.delta;
  return out;
}

StableBound gen_bound_stable(const BoundInputs& in, double sigma0,
                             std::span<const double> alphas,
                             double empirical_margin_risk) {
  check_depth_inputs(in);
  if (alphas.size() != in.depth) {
    throw ParameterError("gen_bound_stable: one alpha per layer required");
  }
  for (double a : alphas) {
    if (!(a > 1.0) || !(a < 2.0)) {
      throw ParameterError("gen_bound_stable: every alpha_l must lie in (1, 2)");
    }
  }
  const double logn = std::log(in.n);
  if (!(in.n / logn >= 10.0 * static_cast<double>(in.depth))) {
    throw PreconditionError("gen_bound_stable requires n / log(n) >= 10 L");
  }
  if (!(sigma0 > 0.0)) throw ParameterError("gen_bound_stable: sigma0 must be > 0");

  StableBound out;
  const double l = static_cast<double>(in.depth);
  const double dd = static_cast<double>(in.d);
  out.a_coeff = 6.0 * std::numbers::sqrt2 * in.feature_bound * std::pow(2.0, l) *
                std::pow(l, 1.5);
  out.b_eps = std::numbers::sqrt2 * in.feature_bound *
              (std::pow(1.0 + in.epsilon, l) - 1.0);
  const double sig_l = std::pow(sigma0, l);
  out.gamma = in.tau + out.b_eps * sig_l * std::sqrt(dd) / in.tau;

  const double kappa = effective_kappa(in);
  const double ek = epsilon_kappa(kappa, in.n);
  out.complexity =
      (out.a_coeff * sig_l / in.tau + 1.0) * std::sqrt((kappa + ek) * dd * logn / in.n);
  out.bound = empirical_margin_risk + out.complexity;
  double alpha_min = alphas[0];
  for (double a : alphas) alpha_min = std::min(alpha_min, a);
  out.failure_prob = 3.0 * std::pow(dd, -alpha_min / (2.0 * l));
  return out;
}

double stable_scale_mixture(std::span<const double> sigmas,
                            std::span<const double> alphas,
                            std::span<const std::size_t> layer_params) {
  if (sigmas.size() != alphas.size() || sigmas.size() != layer_params.size() ||
      sigmas.empty()) {
    throw ParameterError("stable_scale_mixture: per-layer inputs must align");
  }
  std::size_t d = 0;
  for (std::size_t dl : layer_params) d += dl;
  if (d == 0) throw ParameterError("stable_scale_mixture: zero parameters");
  double acc = 0.0;
  for (std::size_t l = 0; l < sigmas.size(); ++l) {
    const double ratio = sigmas[l] / sigma_alpha(alphas[l]);
    acc += (static_cast<double>(layer_params[l]) / static_cast<double>(d)) * ratio * ratio;
  }
  return acc;
}

double sigma0_from_scale(double sigma_sq, double alpha_min, std::size_t depth,
                         std::size_t d) {
  if (!(sigma_sq > 0.0)) throw ParameterError("sigma0_from_scale: sigma^2 must be > 0");
  if (!(alpha_min > 1.0) || !(alpha_min < 2.0)) {
    throw ParameterError("sigma0_from_scale: alpha must lie in (1, 2)");
  }
  if (depth == 0 || d == 0) throw ParameterError("sigma0_from_scale: empty model");
  const double dd = static_cast<double>(d);
  const double coeff = std::pow(4.0, -1.0 / alpha_min) *
                       std::sqrt(static_cast<double>(depth)) / 3.0 *
                       std::pow(dd, -(0.5 + 1.0 / alpha_min));
  return std::sqrt(sigma_sq) / coeff;
}

}  // namespace htc
