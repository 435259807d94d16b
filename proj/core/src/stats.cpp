#include "htc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "htc/errors.hpp"

namespace htc {

double median(std::span<const double> x) {
  if (x.empty()) throw DomainError("median of an empty vector");
  std::vector<double> s(x.begin(), x.end());
  const std::size_t n = s.size();
  const std::size_t mid = n / 2;
  std::nth_element(s.begin(), s.begin() + mid, s.end());
  if (n % 2 == 1) return s[mid];
  const double hi = s[mid];
  const double lo = *std::max_element(s.begin(), s.begin() + mid);
  return lo + (hi - lo) / 2.0;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of an empty vector");
  long double acc = 0.0L;
  for (double v : x) acc += v;
  return static_cast<double>(acc / x.size());
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("spearman_rho length mismatch");
  if (x.size() < 2) throw DomainError("spearman_rho needs at least two points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("spearman_rho undefined for a constant sequence");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace htc
