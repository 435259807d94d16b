#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "htc/fcn_weights.hpp"
#include "htc/matrix.hpp"
#include "htc/random.hpp"

namespace htc {

/// Classification dataset with a bounded feature domain: every feature
/// vector satisfies ||x|| <= feature_bound.
struct Dataset {
  Matrix features;                  // n x d_X, one sample per row
  std::vector<std::size_t> labels;  // values in [0, n_classes)
  double feature_bound = 0.0;

  std::size_t size() const { return labels.size(); }
  void validate(std::size_t n_classes) const;
};

/// W_L relu(W_(L-1) relu( ... relu(W_1 x))). No biases.
std::vector<double> forward(const FcnWeights& net, std::span<const double> x);

/// Classification margin D = out[y] - max_{j != y} out[j].
double classification_margin(std::span<const double> out, std::size_t label);

/// 0-1 margin loss: 1 if the margin is <= gamma, else 0.
int margin_loss(std::span<const double> out, std::size_t label, double gamma);

/// Ramp surrogate: 1 below gamma, 0 above gamma + tau, linear in between.
double surrogate_margin_loss(std::span<const double> out, std::size_t label,
                             double gamma, double tau);

/// Mean margin loss over the dataset; with `tau` present, the ramp surrogate
/// replaces the 0-1 loss.
double empirical_risk(const FcnWeights& net, const Dataset& data, double gamma,
                      std::optional<double> tau = std::nullopt);

/// 0-1 accuracy with argmax prediction (lowest index wins ties).
double accuracy(const FcnWeights& net, const Dataset& data);

/// accuracy(pruned) / accuracy(net); the unpruned accuracy must be > 0.
double relative_test_accuracy(const FcnWeights& net, const FcnWeights& pruned,
                              const Dataset& data);

enum class LossKind { softmax_nll, squared };
enum class BatchMode { without_replacement, with_replacement };
enum class SgdStatus { ok, diverged };

struct SgdConfig {
  double eta = 0.1;
  std::size_t batch = 1;
  std::size_t iters = 0;
  BatchMode mode = BatchMode::without_replacement;
  LossKind loss = LossKind::softmax_nll;
  RngSeed seed{};
  double divergence_norm = 1e12;  // halt when ||w|| exceeds this
};

/// Differentiable training loss and its exact backpropagation gradient for a
/// single sample. The returned container carries one matrix per layer.
double training_loss(const FcnWeights& net, std::span<const double> x,
                     std::size_t label, LossKind kind);
FcnWeights loss_gradient(const FcnWeights& net, std::span<const double> x,
                         std::size_t label, LossKind kind,
                         double* loss_out = nullptr);

/// Runs the plain SGD recursion w <- w - eta (1/b) sum grad. Deterministic
/// given (initial weights, data, config). The driver owns the RNG state so a
/// finished run can be continued, which is what the ergodic tail average
/// needs.
class SgdDriver {
 public:
  SgdDriver(FcnWeights init, const Dataset& data, SgdConfig cfg);

  /// Runs up to `steps` further iterations; stops early on divergence.
  SgdStatus run(std::size_t steps);

  /// Continues for `extra_iters` steps and returns the arithmetic mean of
  /// the iterates produced during that window.
  struct TailAverage {
    FcnWeights weights;
    SgdStatus status = SgdStatus::ok;
  };
  TailAverage tail_average(std::size_t extra_iters);

  const FcnWeights& weights() const { return net_; }
  SgdStatus status() const { return status_; }
  std::size_t steps_run() const { return steps_; }

 private:
  void step();

  FcnWeights net_;
  const Dataset* data_;
  SgdConfig cfg_;
  Engine rng_;
  SgdStatus status_ = SgdStatus::ok;
  std::size_t steps_ = 0;
  std::vector<std::size_t> perm_;
  std::size_t perm_pos_ = 0;
};

struct SgdResult {
  FcnWeights weights;
  SgdStatus status = SgdStatus::ok;
  std::size_t steps_run = 0;
};

/// One-shot training run of cfg.iters steps.
SgdResult sgd_train(FcnWeights init, const Dataset& data, const SgdConfig& cfg);

/// Per-layer i.i.d. uniform init on [-1/sqrt(fan_in), 1/sqrt(fan_in)].
FcnWeights init_fcn(std::span<const std::size_t> arch, RngSeed seed);

}  // namespace htc
