#pragma once

#include <span>
#include <vector>

namespace htc {

/// Median. Even lengths use the midpoint of the two middle order statistics.
double median(std::span<const double> x);

double mean(std::span<const double> x);

/// Spearman rank correlation; ties receive average ranks.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace htc
