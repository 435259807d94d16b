#pragma once

#include <cstddef>
#include <vector>

#include "htc/matrix.hpp"
#include "htc/random.hpp"

namespace htc {

/// Symmetric alpha-stable law with characteristic function
/// E exp(iwX) = exp(-|sigma w|^alpha), alpha in (0, 2], sigma > 0.
/// alpha = 2 is a Gaussian with variance 2 sigma^2.
struct StableParams {
  double alpha = 2.0;
  double sigma = 1.0;

  void validate() const;
};

/// Elliptically contoured multivariate stable law with characteristic
/// function E exp(i<w, X>) = exp(-||w||^alpha), alpha in (0, 2).
/// Coordinates share a univariate SaS marginal but are dependent.
struct EllipticStableParams {
  double alpha = 1.5;
  std::size_t dim = 1;

  void validate() const;
};

/// One draw / n i.i.d. draws via the Chambers-Mallows-Stuck transform.
/// alpha == 2 and alpha == 1 take exact closed-form branches.
double sample_sas_one(const StableParams& params, Engine& rng);
std::vector<double> sample_sas(const StableParams& params, std::size_t n, Engine& rng);
std::vector<double> sample_sas(const StableParams& params, std::size_t n, RngSeed seed);

/// Totally skewed (beta = 1) positive stable draws, alpha in (0, 1),
/// normalized so the Laplace transform is E exp(-sA) = exp(-s^alpha).
double sample_positive_stable_one(double alpha, Engine& rng);
std::vector<double> sample_positive_stable(double alpha, std::size_t n, Engine& rng);
std::vector<double> sample_positive_stable(double alpha, std::size_t n, RngSeed seed);

/// n rows, each an elliptic SaS vector X = sqrt(2 A) Z with A positive
/// (alpha/2)-stable and Z standard Gaussian, so that the characteristic
/// function is exactly exp(-||w||^alpha).
Matrix sample_elliptic_sas(const EllipticStableParams& params, std::size_t n, Engine& rng);
Matrix sample_elliptic_sas(const EllipticStableParams& params, std::size_t n, RngSeed seed);

/// Normalizing constant sigma_alpha = (2 Gamma(-alpha) cos((2-alpha)pi/2))^(1/alpha)
/// for alpha in (1, 2), linking the characteristic-function scale to the
/// normalized parametrization used by the stable norm bound.
double sigma_alpha(double alpha);

/// exp(-|sigma w|^alpha).
double char_fn_sas(const StableParams& params, double w);

}  // namespace htc
