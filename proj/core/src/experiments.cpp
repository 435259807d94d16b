#include "htc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "htc/errors.hpp"
#include "htc/parallel.hpp"
#include "htc/stable.hpp"
#include "htc/stats.hpp"
#include "htc/tail_index.hpp"

namespace htc {

Matrix synth_weight_matrix(double alpha, std::size_t rows, std::size_t cols,
                           SynthMode mode, RngSeed seed) {
  if (rows == 0 || cols == 0) throw ParameterError("synth_weight_matrix: empty shape");
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw ParameterError("synth_weight_matrix: alpha must lie in (0, 2]");
  }
  Engine rng(seed);

  if (alpha == 2.0 || mode == SynthMode::independent) {
    // At alpha = 2 the elliptic law factorizes, so all modes coincide.
    Matrix m(rows, cols);
    const StableParams params{alpha, 1.0};
    for (double& v : m.data()) v = sample_sas_one(params, rng);
    return m;
  }

  if (mode == SynthMode::column_correlated) {
    // One elliptic draw per column.
    const Matrix cols_draw = sample_elliptic_sas({alpha, rows}, cols, rng);
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols_draw(j, i);
    }
    return m;
  }

  // fully_correlated: a single elliptic vector of dimension rows*cols.
  const Matrix flat = sample_elliptic_sas({alpha, rows * cols}, 1, rng);
  return Matrix(rows, cols,
                std::vector<double>(flat.data().begin(), flat.data().end()));
}

std::vector<AlphaPruningRow> alpha_vs_pruning(const AlphaPruningSpec& spec,
                                              SynthMode mode) {
  if (spec.alphas.empty()) throw ParameterError("alpha_vs_pruning: empty alpha grid");
  if (spec.seeds == 0) throw ParameterError("alpha_vs_pruning: seeds must be >= 1");
  if (!(spec.epsilon > 0.0) || !(spec.epsilon < 1.0)) {
    throw ParameterError("alpha_vs_pruning: epsilon must lie in (0, 1)");
  }

  std::vector<AlphaPruningRow> rows(spec.alphas.size());
  parallel_for(spec.alphas.size(), [&](std::size_t i) {
    const double alpha = spec.alphas[i];
    std::vector<double> ratios(spec.seeds);
    for (std::size_t s = 0; s < spec.seeds; ++s) {
      const RngSeed task = derive_stream(spec.seed, i * spec.seeds + s);
      const Matrix w = synth_weight_matrix(alpha, spec.rows, spec.cols, mode, task);
      ratios[s] = 1.0 - min_kappa(w.data(), spec.epsilon, spec.p);
    }
    rows[i] = AlphaPruningRow{alpha, median(ratios)};
  });
  return rows;
}

double lepage_epsilon(double alpha, std::span<const double> gammas, double kappa,
                      double p) {
  if (gammas.empty()) throw DomainError("lepage_epsilon: empty partial-sum vector");
  if (!(kappa > 0.0) || !(kappa < 1.0)) {
    throw ParameterError("lepage_epsilon: kappa must lie in (0, 1)");
  }
  if (!(p > 0.0)) throw ParameterError("lepage_epsilon: p must be > 0");
  if (!(alpha > 0.0)) throw ParameterError("lepage_epsilon: alpha must be > 0");
  double prev = 0.0;
  for (double g : gammas) {
    if (!(g > prev)) {
      throw DomainError("lepage_epsilon: partial sums must be strictly increasing");
    }
    prev = g;
  }
  const std::size_t d = gammas.size();
  const std::size_t cut = std::min(ceil_count(kappa * static_cast<double>(d)), d);
  long double tail = 0.0L, total = 0.0L;
  for (std::size_t l = 0; l < d; ++l) {
    const long double term = std::pow(static_cast<long double>(gammas[l]),
                                      static_cast<long double>(-p / alpha));
    total += term;
    if (l >= cut) tail += term;
  }
  return static_cast<double>(std::pow(tail / total, 1.0L / p));
}

std::vector<DimScalingRow> dim_scaling(const DimScalingSpec& spec) {
  if (spec.dims.empty()) throw ParameterError("dim_scaling: empty dimension grid");
  if (spec.seeds == 0) throw ParameterError("dim_scaling: seeds must be >= 1");
  if (!(spec.kappa > 0.0) || !(spec.kappa <= 1.0)) {
    throw ParameterError("dim_scaling: kappa must lie in (0, 1]");
  }

  std::vector<DimScalingRow> rows(spec.dims.size());
  const StableParams params{spec.alpha, 1.0};
  std::vector<std::vector<double>> errors(spec.dims.size(),
                                          std::vector<double>(spec.seeds, 0.0));
  parallel_for(spec.dims.size() * spec.seeds, [&](std::size_t task) {
    const std::size_t i = task / spec.seeds;
    const std::size_t s = task % spec.seeds;
    const std::size_t d = spec.dims[i];
    Engine rng(derive_stream(spec.seed, task));
    std::vector<double> x(d);
    for (double& v : x) v = sample_sas_one(params, rng);
    const std::size_t kept =
        std::min(ceil_count(spec.kappa * static_cast<double>(d)), d);
    const std::size_t counts[1] = {kept};
    errors[i][s] = k_best_error_profile(x, spec.p, counts)[0];
  });

  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    rows[i] = DimScalingRow{spec.dims[i], median(errors[i])};
  }
  return rows;
}

namespace {

// Solve (X^T X) w = X^T y by Gaussian elimination with partial pivoting.
std::vector<double> linear_least_squares(const Matrix& x, const std::vector<double>& y) {
  const std::size_t d = x.cols();
  Matrix a = gram(x);
  std::vector<double> b(d, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    for (std::size_t j = 0; j < d; ++j) b[j] += row[j] * y[i];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    }
    if (a(piv, c) == 0.0) throw NumericError("least squares: singular Gram matrix");
    for (std::size_t j = 0; j < d; ++j) std::swap(a(c, j), a(piv, j));
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < d; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < d; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<double> w(d, 0.0);
  for (std::size_t c = d; c-- > 0;) {
    double acc = b[c];
    for (std::size_t j = c + 1; j < d; ++j) acc -= a(c, j) * w[j];
    w[c] = acc / a(c, c);
  }
  return w;
}

}  // namespace

LinearSgdOutcome train_linear_regression(const LinearRegressionSpec& spec, double eta,
                                         std::size_t batch, std::size_t iters,
                                         std::size_t tail_iters, RngSeed seed) {
  if (spec.dim == 0 || spec.n == 0) throw ParameterError("linear regression: empty problem");
  if (batch < 1 || batch > spec.n) throw ParameterError("linear regression: bad batch size");
  if (!(eta >= 0.0)) throw ParameterError("linear regression: eta must be >= 0");
  if (tail_iters == 0) throw ParameterError("linear regression: tail_iters must be >= 1");

  Engine rng(seed);
  Matrix x(spec.n, spec.dim);
  for (double& v : x.data()) v = rng.normal();
  std::vector<double> y(spec.n);
  for (double& v : y) v = spec.noise * rng.normal();

  std::vector<double> w(spec.dim, 0.0);
  std::vector<double> tail_sum(spec.dim, 0.0);
  LinearSgdOutcome out;

  const double divergence_norm = 1e12;
  const auto one_step = [&] {
    std::vector<double> grad(spec.dim, 0.0);
    for (std::size_t k = 0; k < batch; ++k) {
      const std::size_t idx = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(rng.next()) * spec.n) >> 64);
      const auto row = x.row(idx);
      const double resid = dot(row, w) - y[idx];
      for (std::size_t j = 0; j < spec.dim; ++j) grad[j] += resid * row[j];
    }
    const double scale = eta / static_cast<double>(batch);
    for (std::size_t j = 0; j < spec.dim; ++j) w[j] -= scale * grad[j];
    return norm2(w) <= divergence_norm;
  };

  for (std::size_t it = 0; it < iters; ++it) {
    if (!one_step()) {
      out.diverged = true;
      out.tail_average = w;
      return out;
    }
  }
  std::size_t done = 0;
  for (; done < tail_iters; ++done) {
    if (!one_step()) {
      out.diverged = true;
      break;
    }
    for (std::size_t j = 0; j < spec.dim; ++j) tail_sum[j] += w[j];
  }
  out.tail_average.resize(spec.dim);
  const double denom = static_cast<double>(done > 0 ? done : 1);
  for (std::size_t j = 0; j < spec.dim; ++j) out.tail_average[j] = tail_sum[j] / denom;
  out.final_iterate = w;
  if (!out.diverged) out.least_squares = linear_least_squares(x, y);
  return out;
}

std::vector<EtaBRow> eta_b_sweep(const EtaBSpec& spec) {
  if (spec.grid.empty()) throw ParameterError("eta_b_sweep: empty grid");
  if (spec.seeds == 0) throw ParameterError("eta_b_sweep: seeds must be >= 1");

  std::vector<EtaBRow> rows(spec.grid.size());
  parallel_for(spec.grid.size(), [&](std::size_t i) {
    const auto [eta, batch] = spec.grid[i];
    EtaBRow row;
    row.eta = eta;
    row.batch = batch;
    row.eta_over_b = eta / static_cast<double>(batch);
    row.seeds = spec.seeds;

    // Streams keyed on the point content: duplicated points give identical rows.
    std::uint64_t eta_bits;
    static_assert(sizeof(eta_bits) == sizeof(eta));
    std::memcpy(&eta_bits, &eta, sizeof(eta_bits));
    const RngSeed point_seed = derive_stream(spec.seed, detail::mix3(eta_bits, batch, 0));

    std::vector<std::vector<double>> fluctuations;
    for (std::size_t s = 0; s < spec.seeds; ++s) {
      const LinearSgdOutcome run = train_linear_regression(
          spec.problem, eta, batch, spec.iters, spec.tail_iters,
          derive_stream(point_seed, s));
      if (run.diverged) {
        ++row.diverged;
        continue;
      }
      std::vector<double> f(spec.problem.dim);
      for (std::size_t j = 0; j < spec.problem.dim; ++j) {
        f[j] = run.tail_average[j] - run.least_squares[j];
      }
      fluctuations.push_back(std::move(f));
    }

    if (!fluctuations.empty()) {
      // Coordinate-major pooling: consecutive estimator samples run across
      // independent runs, so block sums mix distinct stationary radii.
      std::vector<double> pooled;
      pooled.reserve(fluctuations.size() * spec.problem.dim);
      for (std::size_t j = 0; j < spec.problem.dim; ++j) {
        for (const auto& f : fluctuations) pooled.push_back(f[j]);
      }
      row.mean_alpha_hat = estimate_alpha_centered(pooled).alpha_hat;
    }
    rows[i] = row;
  });

  bool any = false;
  for (const auto& r : rows) any = any || (r.diverged < r.seeds);
  if (!any) throw NumericError("eta_b_sweep: every run in the grid diverged");
  return rows;
}

Dataset make_gaussian_mixture(std::size_t n, std::size_t dim, double separation,
                              RngSeed seed) {
  if (n == 0 || dim == 0) throw ParameterError("make_gaussian_mixture: empty spec");
  Engine rng(seed);
  Dataset data;
  data.features = Matrix(n, dim);
  data.labels.resize(n);
  const double shift = separation / (2.0 * std::sqrt(static_cast<double>(dim)));
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = rng.next() & 1u;
    const double mu = label == 0 ? -shift : shift;
    auto row = data.features.row(i);
    for (double& v : row) v = mu + rng.normal();
    data.labels[i] = label;
    max_norm = std::max(max_norm, norm2(row));
  }
  data.feature_bound = max_norm;
  return data;
}

namespace {

// Median-center a span in place; returns the median for restoration.
double center_in_place(std::span<double> v) {
  const double m = median(v);
  for (double& x : v) x -= m;
  return m;
}

void restore_in_place(std::span<double> v, double m) {
  for (double& x : v) x += m;
}

}  // namespace

FcnWeights prune_with_protocol(const FcnWeights& net, PruneScheme scheme, double kappa,
                               double p) {
  if (net.layers.empty()) throw DomainError("prune_with_protocol: empty network");
  if (scheme == PruneScheme::global_magnitude) {
    std::vector<double> flat = net.flatten();
    const double m = center_in_place(flat);
    PruneResult r = k_best(flat, kappa * static_cast<double>(flat.size()), p);
    restore_in_place(r.pruned, m);
    const auto shapes = net.shapes();
    return FcnWeights::unflatten(r.pruned, shapes);
  }

  FcnWeights out;
  out.layers.reserve(net.layers.size());
  for (const auto& w : net.layers) {
    std::vector<double> flat(w.data().begin(), w.data().end());
    const double m = center_in_place(flat);
    const Matrix centered(w.rows(), w.cols(), flat);
    Matrix pruned;
    switch (scheme) {
      case PruneScheme::layerwise_magnitude: {
        PruneResult r = k_best(flat, kappa * static_cast<double>(flat.size()), p);
        pruned = Matrix(w.rows(), w.cols(), std::move(r.pruned));
        break;
      }
      case PruneScheme::svd:
        pruned = svd_prune(centered, kappa).pruned;
        break;
      case PruneScheme::node:
        pruned = node_prune(centered, kappa, p).pruned;
        break;
      case PruneScheme::global_magnitude:
        break;  // handled above
    }
    restore_in_place(pruned.data(), m);
    out.layers.push_back(std::move(pruned));
  }
  return out;
}

double net_mean_alpha(const FcnWeights& net) {
  std::vector<TailIndexEstimate> per_layer;
  per_layer.reserve(net.layers.size());
  for (const auto& w : net.layers) per_layer.push_back(estimate_alpha_centered(w.data()));
  return mean_layer_alpha(per_layer);
}

std::vector<PruneAccuracyRow> prune_accuracy_sweep(std::span<const FcnWeights> nets,
                                                   PruneScheme scheme,
                                                   std::span<const double> kappa_grid,
                                                   const Dataset& test, double p) {
  if (nets.empty()) throw ParameterError("prune_accuracy_sweep: no networks");
  if (kappa_grid.empty()) throw ParameterError("prune_accuracy_sweep: empty kappa grid");

  std::vector<PruneAccuracyRow> rows(nets.size() * kappa_grid.size());
  parallel_for(nets.size(), [&](std::size_t i) {
    const double alpha_hat = net_mean_alpha(nets[i]);
    for (std::size_t k = 0; k < kappa_grid.size(); ++k) {
      const double kappa = kappa_grid[k];
      const FcnWeights pruned = prune_with_protocol(nets[i], scheme, kappa, p);
      PruneAccuracyRow row;
      row.net_id = i;
      row.alpha_hat = alpha_hat;
      row.kappa = kappa;
      row.pruning_ratio = 1.0 - kappa;
      row.rel_accuracy = relative_test_accuracy(nets[i], pruned, test);
      rows[i * kappa_grid.size() + k] = row;
    }
  });
  return rows;
}

}  // namespace htc
