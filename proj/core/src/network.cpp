#include "htc/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "htc/errors.hpp"

namespace htc {

void FcnWeights::validate() const {
  if (layers.size() < 2) throw DomainError("network depth must be >= 2");
  for (const auto& m : layers) {
    if (m.rows() == 0 || m.cols() == 0) throw DomainError("empty layer matrix");
  }
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    if (layers[l + 1].cols() != layers[l].rows()) {
      throw DomainError("layer shape chain broken between layers " +
                        std::to_string(l + 1) + " and " + std::to_string(l + 2));
    }
  }
}

std::size_t FcnWeights::total_params() const {
  std::size_t n = 0;
  for (const auto& m : layers) n += m.size();
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> FcnWeights::shapes() const {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  s.reserve(layers.size());
  for (const auto& m : layers) s.emplace_back(m.rows(), m.cols());
  return s;
}

std::vector<double> FcnWeights::flatten() const {
  std::vector<double> flat;
  flat.reserve(total_params());
  for (const auto& m : layers) flat.insert(flat.end(), m.data().begin(), m.data().end());
  return flat;
}

FcnWeights FcnWeights::unflatten(
    std::span<const double> flat,
    std::span<const std::pair<std::size_t, std::size_t>> shapes) {
  FcnWeights net;
  std::size_t pos = 0;
  for (const auto& [r, c] : shapes) {
    if (pos + r * c > flat.size()) throw DomainError("unflatten: vector too short");
    net.layers.emplace_back(r, c,
                            std::vector<double>(flat.begin() + pos, flat.begin() + pos + r * c));
    pos += r * c;
  }
  if (pos != flat.size()) throw DomainError("unflatten: vector too long");
  return net;
}

double FcnWeights::param_norm() const {
  long double acc = 0.0L;
  for (const auto& m : layers) {
    for (double v : m.data()) acc += static_cast<long double>(v) * v;
  }
  return static_cast<double>(std::sqrt(acc));
}

void Dataset::validate(std::size_t n_classes) const {
  if (labels.size() != features.rows()) throw DomainError("dataset label count mismatch");
  for (std::size_t l : labels) {
    if (l >= n_classes) throw DomainError("dataset label out of range");
  }
  for (std::size_t i = 0; i < features.rows(); ++i) {
    if (norm2(features.row(i)) > feature_bound) {
      throw DomainError("feature norm exceeds the declared bound");
    }
  }
}

namespace {

inline void relu_inplace(std::vector<double>& v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
}

}  // namespace

std::vector<double> forward(const FcnWeights& net, std::span<const double> x) {
  net.validate();
  if (x.size() != net.input_dim()) throw DomainError("forward: input dimension mismatch");
  std::vector<double> h(x.begin(), x.end());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    h = matvec(net.layers[l], h);
    if (l + 1 < net.layers.size()) relu_inplace(h);
  }
  return h;
}

double classification_margin(std::span<const double> out, std::size_t label) {
  if (out.size() < 2) throw DomainError("margin needs at least two classes");
  if (label >= out.size()) throw DomainError("label out of range");
  double best_other = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j != label) best_other = std::max(best_other, out[j]);
  }
  return out[label] - best_other;
}

int margin_loss(std::span<const double> out, std::size_t label, double gamma) {
  return classification_margin(out, label) <= gamma ? 1 : 0;
}

double surrogate_margin_loss(std::span<const double> out, std::size_t label,
                             double gamma, double tau) {
  if (!(tau > 0.0)) throw ParameterError("surrogate margin loss requires tau > 0");
  const double d = classification_margin(out, label);
  if (d <= gamma) return 1.0;
  if (d <= gamma + tau) return 1.0 - (d - gamma) / tau;
  return 0.0;
}

double empirical_risk(const FcnWeights& net, const Dataset& data, double gamma,
                      std::optional<double> tau) {
  if (data.size() == 0) throw DomainError("empirical_risk: empty dataset");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto out = forward(net, data.features.row(i));
    acc += tau ? surrogate_margin_loss(out, data.labels[i], gamma, *tau)
               : static_cast<double>(margin_loss(out, data.labels[i], gamma));
  }
  return static_cast<double>(acc / data.size());
}

double accuracy(const FcnWeights& net, const Dataset& data) {
  if (data.size() == 0) throw DomainError("accuracy: empty dataset");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto out = forward(net, data.features.row(i));
    const std::size_t pred =
        static_cast<std::size_t>(std::max_element(out.begin(), out.end()) - out.begin());
    if (pred == data.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

double relative_test_accuracy(const FcnWeights& net, const FcnWeights& pruned,
                              const Dataset& data) {
  const double base = accuracy(net, data);
  if (base == 0.0) throw DomainError("relative_test_accuracy: unpruned accuracy is zero");
  return accuracy(pruned, data) / base;
}

namespace {

// Forward pass retaining pre-activations; returns the loss and fills the
// output-layer gradient dL/d(out).
double forward_with_loss(const FcnWeights& net, std::span<const double> x,
                         std::size_t label, LossKind kind,
                         std::vector<std::vector<double>>& pre_acts,
                         std::vector<double>& out_grad) {
  const std::size_t depth = net.layers.size();
  pre_acts.assign(depth, {});
  std::vector<double> h(x.begin(), x.end());
  for (std::size_t l = 0; l < depth; ++l) {
    pre_acts[l] = matvec(net.layers[l], h);
    h = pre_acts[l];
    if (l + 1 < depth) relu_inplace(h);
  }
  const std::vector<double>& out = pre_acts[depth - 1];

  out_grad.assign(out.size(), 0.0);
  if (kind == LossKind::softmax_nll) {
    const double mx = *std::max_element(out.begin(), out.end());
    double z = 0.0;
    for (double o : out) z += std::exp(o - mx);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out_grad[j] = std::exp(out[j] - mx) / z;
    }
    const double loss = -(out[label] - mx - std::log(z));
    out_grad[label] -= 1.0;
    return loss;
  }
  // squared: l = 1/2 ||out - onehot(label)||^2
  double loss = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double diff = out[j] - (j == label ? 1.0 : 0.0);
    out_grad[j] = diff;
    loss += 0.5 * diff * diff;
  }
  return loss;
}

}  // namespace

double training_loss(const FcnWeights& net, std::span<const double> x,
                     std::size_t label, LossKind kind) {
  std::vector<std::vector<double>> pre_acts;
  std::vector<double> out_grad;
  return forward_with_loss(net, x, label, kind, pre_acts, out_grad);
}

FcnWeights loss_gradient(const FcnWeights& net, std::span<const double> x,
                         std::size_t label, LossKind kind, double* loss_out) {
  net.validate();
  if (label >= net.output_dim()) throw DomainError("loss_gradient: label out of range");

  std::vector<std::vector<double>> pre_acts;
  std::vector<double> delta;
  const double loss = forward_with_loss(net, x, label, kind, pre_acts, delta);
  if (loss_out) *loss_out = loss;

  const std::size_t depth = net.layers.size();
  FcnWeights grad;
  grad.layers.reserve(depth);
  for (const auto& m : net.layers) grad.layers.emplace_back(m.rows(), m.cols());

  for (std::size_t l = depth; l-- > 0;) {
    // Activation feeding layer l.
    std::vector<double> h_in;
    if (l == 0) {
      h_in.assign(x.begin(), x.end());
    } else {
      h_in = pre_acts[l - 1];
      relu_inplace(h_in);
    }
    Matrix& g = grad.layers[l];
    for (std::size_t i = 0; i < g.rows(); ++i) {
      const double di = delta[i];
      if (di == 0.0) continue;
      auto row = g.row(i);
      for (std::size_t j = 0; j < g.cols(); ++j) row[j] = di * h_in[j];
    }
    if (l == 0) break;
    // delta_(l-1) = (W_l^T delta) . relu'(z_(l-1)); relu' is 0 at 0.
    std::vector<double> prev(net.layers[l].cols(), 0.0);
    for (std::size_t i = 0; i < net.layers[l].rows(); ++i) {
      const double di = delta[i];
      if (di == 0.0) continue;
      const auto row = net.layers[l].row(i);
      for (std::size_t j = 0; j < prev.size(); ++j) prev[j] += row[j] * di;
    }
    for (std::size_t j = 0; j < prev.size(); ++j) {
      if (!(pre_acts[l - 1][j] > 0.0)) prev[j] = 0.0;
    }
    delta = std::move(prev);
  }
  return grad;
}

SgdDriver::SgdDriver(FcnWeights init, const Dataset& data, SgdConfig cfg)
    : net_(std::move(init)), data_(&data), cfg_(cfg), rng_(cfg.seed) {
  net_.validate();
  data.validate(net_.output_dim());
  if (!(cfg_.eta >= 0.0)) throw ParameterError("sgd: eta must be >= 0");
  if (cfg_.batch < 1 || cfg_.batch > data.size()) {
    throw ParameterError("sgd: batch size must lie in [1, n]");
  }
  perm_.resize(data.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  perm_pos_ = perm_.size();  // force a shuffle before the first batch
}

namespace {

std::size_t bounded_index(Engine& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng.next()) * n) >> 64);
}

}  // namespace

void SgdDriver::step() {
  const std::size_t n = data_->size();
  const std::size_t b = cfg_.batch;

  // Batches never straddle epochs: reshuffle when fewer than b remain.
  if (cfg_.mode == BatchMode::without_replacement && perm_.size() - perm_pos_ < b) {
    for (std::size_t i = perm_.size(); i-- > 1;) {
      const std::size_t j = bounded_index(rng_, i + 1);
      std::swap(perm_[i], perm_[j]);
    }
    perm_pos_ = 0;
  }

  FcnWeights grad;
  grad.layers.reserve(net_.layers.size());
  for (const auto& m : net_.layers) grad.layers.emplace_back(m.rows(), m.cols());

  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t idx = cfg_.mode == BatchMode::with_replacement
                                ? bounded_index(rng_, n)
                                : perm_[perm_pos_++];
    const FcnWeights g = loss_gradient(net_, data_->features.row(idx), data_->labels[idx],
                                       cfg_.loss);
    for (std::size_t l = 0; l < grad.layers.size(); ++l) {
      auto dst = grad.layers[l].data();
      const auto src = g.layers[l].data();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
  }

  const double scale = cfg_.eta / static_cast<double>(b);
  for (std::size_t l = 0; l < net_.layers.size(); ++l) {
    auto w = net_.layers[l].data();
    const auto g = grad.layers[l].data();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= scale * g[i];
  }
  ++steps_;

  const double norm = net_.param_norm();
  if (!(norm <= cfg_.divergence_norm)) status_ = SgdStatus::diverged;
}

SgdStatus SgdDriver::run(std::size_t steps) {
  for (std::size_t s = 0; s < steps && status_ == SgdStatus::ok; ++s) step();
  return status_;
}

SgdDriver::TailAverage SgdDriver::tail_average(std::size_t extra_iters) {
  if (extra_iters == 0) throw ParameterError("tail_average: extra_iters must be >= 1");
  std::vector<Matrix> acc;
  acc.reserve(net_.layers.size());
  for (const auto& m : net_.layers) acc.emplace_back(m.rows(), m.cols());

  std::size_t done = 0;
  for (; done < extra_iters && status_ == SgdStatus::ok; ++done) {
    step();
    for (std::size_t l = 0; l < acc.size(); ++l) {
      auto dst = acc[l].data();
      const auto src = net_.layers[l].data();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
  }

  TailAverage out;
  out.status = status_;
  const double denom = static_cast<double>(done > 0 ? done : 1);
  for (auto& m : acc) {
    for (double& v : m.data()) v /= denom;
  }
  out.weights.layers = std::move(acc);
  return out;
}

SgdResult sgd_train(FcnWeights init, const Dataset& data, const SgdConfig& cfg) {
  SgdDriver driver(std::move(init), data, cfg);
  driver.run(cfg.iters);
  return SgdResult{driver.weights(), driver.status(), driver.steps_run()};
}

FcnWeights init_fcn(std::span<const std::size_t> arch, RngSeed seed) {
  if (arch.size() < 3) throw ParameterError("init_fcn: need at least input, hidden, output");
  Engine rng(seed);
  FcnWeights net;
  for (std::size_t l = 0; l + 1 < arch.size(); ++l) {
    const std::size_t fan_in = arch[l];
    const std::size_t fan_out = arch[l + 1];
    if (fan_in == 0 || fan_out == 0) throw ParameterError("init_fcn: zero-width layer");
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Matrix m(fan_out, fan_in);
    for (double& v : m.data()) v = bound * (2.0 * rng.uniform() - 1.0);
    net.layers.push_back(std::move(m));
  }
  return net;
}

}  // namespace htc
