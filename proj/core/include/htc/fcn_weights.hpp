#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "htc/matrix.hpp"

namespace htc {

/// Weights of a fully connected ReLU network without biases: matrices
/// W_1 .. W_L with W_l of shape h_l x h_(l-1); h_0 is the input dimension and
/// h_L the output dimension. The model requires L >= 2.
struct FcnWeights {
  std::vector<Matrix> layers;

  /// Checks depth >= 2, non-empty layers, and the shape chain
  /// cols(W_(l+1)) == rows(W_l).
  void validate() const;

  std::size_t depth() const { return layers.size(); }
  std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().cols(); }
  std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().rows(); }
  std::size_t total_params() const;

  std::vector<std::pair<std::size_t, std::size_t>> shapes() const;

  /// Concatenation of the row-major vectorized layers, w = [w_1 .. w_L].
  std::vector<double> flatten() const;

  /// Inverse of flatten for the given shapes.
  static FcnWeights unflatten(std::span<const double> flat,
                              std::span<const std::pair<std::size_t, std::size_t>> shapes);

  /// Euclidean norm of the flattened parameter vector.
  double param_norm() const;
};

}  // namespace htc
