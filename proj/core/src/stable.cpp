#include "htc/stable.hpp"

#include <cmath>
#include <numbers>

#include "htc/errors.hpp"

namespace htc {

namespace {
constexpr double kPi = std::numbers::pi;
}

void StableParams::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw ParameterError("stable tail index alpha must lie in (0, 2]");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("stable scale sigma must be finite and > 0");
  }
}

void EllipticStableParams::validate() const {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw ParameterError(
        "elliptic stable alpha must lie in (0, 2); use a Gaussian directly for alpha = 2");
  }
  if (dim == 0) throw ParameterError("elliptic stable dimension must be >= 1");
}

double sample_sas_one(const StableParams& params, Engine& rng) {
  const double a = params.alpha;
  if (a == 2.0) {
    // exp(-(sigma w)^2) is N(0, 2 sigma^2); CMS has a removable singularity here.
    return params.sigma * std::sqrt(2.0) * rng.normal();
  }
  if (a == 1.0) {
    return params.sigma * std::tan(kPi * (rng.uniform() - 0.5));
  }
  const double u = kPi * (rng.uniform() - 0.5);  // (-pi/2, pi/2)
  const double w = rng.exponential();
  const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
                   std::pow(std::cos((1.0 - a) * u) / w, (1.0 - a) / a);
  return params.sigma * x;
}

std::vector<double> sample_sas(const StableParams& params, std::size_t n, Engine& rng) {
  params.validate();
  if (n == 0) throw ParameterError("sample count must be >= 1");
  std::vector<double> out(n);
  for (double& v : out) v = sample_sas_one(params, rng);
  return out;
}

std::vector<double> sample_sas(const StableParams& params, std::size_t n, RngSeed seed) {
  Engine rng(seed);
  return sample_sas(params, n, rng);
}

double sample_positive_stable_one(double alpha, Engine& rng) {
  // Kanter's representation. With U ~ U(0, pi) and W ~ Exp(1),
  //   A = sin(aU) sin(U)^(-1/a) (sin((1-a)U)/W)^((1-a)/a)
  // has Laplace transform exp(-s^a).
  const double u = kPi * rng.uniform();
  const double w = rng.exponential();
  return std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
         std::pow(std::sin((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_positive_stable(double alpha, std::size_t n, Engine& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw ParameterError("positive stable index must lie in (0, 1)");
  }
  if (n == 0) throw ParameterError("sample count must be >= 1");
  std::vector<double> out(n);
  for (double& v : out) v = sample_positive_stable_one(alpha, rng);
  return out;
}

std::vector<double> sample_positive_stable(double alpha, std::size_t n, RngSeed seed) {
  Engine rng(seed);
  return sample_positive_stable(alpha, n, rng);
}

Matrix sample_elliptic_sas(const EllipticStableParams& params, std::size_t n, Engine& rng) {
  params.validate();
  if (n == 0) throw ParameterError("sample count must be >= 1");
  Matrix out(n, params.dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = sample_positive_stable_one(params.alpha / 2.0, rng);
    const double s = std::sqrt(2.0 * a);
    auto r = out.row(i);
    for (double& v : r) v = s * rng.normal();
  }
  return out;
}

Matrix sample_elliptic_sas(const EllipticStableParams& params, std::size_t n, RngSeed seed) {
  Engine rng(seed);
  return sample_elliptic_sas(params, n, rng);
}

double sigma_alpha(double alpha) {
  if (!(alpha > 1.0) || !(alpha < 2.0)) {
    throw ParameterError("sigma_alpha requires alpha in (1, 2)");
  }
  // Gamma(-alpha) = Gamma(2 - alpha) / (alpha (alpha - 1)) keeps tgamma away
  // from its poles for alpha in (1, 2).
  const double gamma_neg = std::tgamma(2.0 - alpha) / (alpha * (alpha - 1.0));
  const double base = 2.0 * gamma_neg * std::cos((2.0 - alpha) * kPi / 2.0);
  return std::pow(base, 1.0 / alpha);
}

double char_fn_sas(const StableParams& params, double w) {
  params.validate();
  return std::exp(-std::pow(std::abs(params.sigma * w), params.alpha));
}

}  // namespace htc
