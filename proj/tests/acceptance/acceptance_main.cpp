// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion owns a fixed seed and a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "htc/bounds.hpp"
#include "htc/experiments.hpp"
#include "htc/matrix.hpp"
#include "htc/network.hpp"
#include "htc/parallel.hpp"
#include "htc/pruning.hpp"
#include "htc/stable.hpp"
#include "htc/stats.hpp"
#include "htc/svd.hpp"
#include "htc/tail_index.hpp"

using namespace htc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int index, const std::string& name, double budget_s,
            const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = elapsed <= budget_s;
  const bool pass = outcome.pass && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] %02d %s (%.1f s of %.0f s budget) %s\n", pass ? "PASS" : "FAIL",
              index, name.c_str(), elapsed, budget_s, outcome.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// 1. Estimator accuracy on simulated stable data.
Outcome criterion_estimator_accuracy() {
  const std::vector<double> alphas{1.0, 1.2, 1.5, 1.7, 1.9, 2.0};
  double worst = 0.0;
  std::ostringstream detail;
  for (double alpha : alphas) {
    std::vector<double> devs(10);
    parallel_for(10, [&](std::size_t s) {
      const auto x =
          sample_sas({alpha, 1.0}, 1000000, derive_stream({1001, 0}, s * 100 + (std::size_t)(alpha * 10)));
      devs[s] = std::abs(estimate_alpha_centered(x).alpha_hat - alpha);
    });
    const double med = median(devs);
    worst = std::max(worst, med);
    detail << " a=" << alpha << ":" << fmt(med);
  }
  Outcome o;
  o.pass = worst <= 0.05;
  o.detail = "median |alpha_hat - alpha| per alpha:" + detail.str() +
             "; worst " + fmt(worst) + " vs 0.05";
  return o;
}

// 2. Magnitude-pruning error decay across dimensions plus Gaussian contrast.
Outcome criterion_error_decay() {
  DimScalingSpec spec;
  spec.alpha = 1.7;
  spec.p = 2.0;
  spec.kappa = 0.1;
  spec.dims = {1000, 10000, 100000, 1000000};
  spec.seeds = 20;
  spec.seed = {1002, 0};
  const auto heavy = dim_scaling(spec);

  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < heavy.size(); ++i) {
    decreasing = decreasing && heavy[i + 1].median_rel_error < heavy[i].median_rel_error;
  }
  const double final_err = heavy.back().median_rel_error;
  const bool below = final_err < 0.15;

  spec.alpha = 2.0;
  const auto gauss = dim_scaling(spec);
  const bool plateau =
      std::abs(gauss.back().median_rel_error - gauss.front().median_rel_error) < 0.02 &&
      gauss.back().median_rel_error > 0.5;

  Outcome o;
  o.pass = decreasing && below && plateau;
  std::ostringstream d;
  d << "errors:";
  for (const auto& row : heavy) d << " " << fmt(row.median_rel_error);
  d << " (strict decay " << (decreasing ? "yes" : "NO") << "; final " << fmt(final_err)
    << " vs 0.15 " << (below ? "ok" : "EXCEEDED") << "); gaussian "
    << fmt(gauss.front().median_rel_error) << "->" << fmt(gauss.back().median_rel_error)
    << " plateau " << (plateau ? "yes" : "NO");
  o.detail = d.str();
  return o;
}

// 3. Prunability vs tail index, independent vs fully correlated matrices.
Outcome criterion_alpha_pruning_trend() {
  AlphaPruningSpec spec;
  for (int i = 0; i < 10; ++i) spec.alphas.push_back(1.75 + 0.25 * i / 9.0);
  spec.rows = 500;
  spec.cols = 500;
  spec.epsilon = 0.1;
  spec.p = 2.0;
  spec.seeds = 10;
  spec.seed = {7, 0};

  const auto run = [&](SynthMode mode) {
    const auto rows = alpha_vs_pruning(spec, mode);
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
      xs.push_back(r.alpha);
      ys.push_back(r.pruning_ratio);
    }
    return spearman_rho(xs, ys);
  };
  const double rho_ind = run(SynthMode::independent);
  const double rho_full = run(SynthMode::fully_correlated);

  Outcome o;
  o.pass = rho_ind <= -0.9 && std::abs(rho_full) < 0.5;
  o.detail = "independent rho " + fmt(rho_ind) + " vs -0.9; fully-correlated |rho| " +
             fmt(std::abs(rho_full)) + " vs 0.5";
  return o;
}

// 4. LePage error is strictly increasing in alpha for every draw.
Outcome criterion_lepage_monotonicity() {
  std::size_t violations = 0;
  const double p = 1.0;
  for (unsigned s = 0; s < 100; ++s) {
    Engine rng({1004, s});
    std::vector<double> gammas(1000);
    double acc = 0.0;
    for (double& g : gammas) {
      acc += rng.exponential();
      g = acc;
    }
    double prev = -1.0;
    for (int i = 0; i < 10; ++i) {
      const double alpha = 1.05 + i * 0.1;  // inside (p, 2)
      const double eps = lepage_epsilon(alpha, gammas, 0.3, p);
      if (!(eps > prev)) ++violations;
      prev = eps;
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = std::to_string(violations) + " violations over 100 draws, d=1000";
  return o;
}

// 5. Heavier tails for larger eta/b in Gaussian linear regression.
Outcome criterion_eta_b_trend() {
  EtaBSpec spec;
  spec.problem = {100, 1000, 1.0};
  spec.iters = 6000;
  spec.tail_iters = 1000;
  spec.seeds = 320;
  spec.seed = {1, 0};
  spec.grid = {{0.002, 1},  {0.016, 1},  {0.0185, 1}, {0.0193, 1}, {0.0199, 1},
               {0.0204, 1}, {0.0209, 1}, {0.0214, 1}, {0.0219, 1}, {0.0224, 1}};
  const auto rows = eta_b_sweep(spec);

  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.diverged < r.seeds) {
      xs.push_back(r.eta_over_b);
      ys.push_back(r.mean_alpha_hat);
    }
  }
  const double rho = spearman_rho(xs, ys);
  const double anchor = ys.front();

  Outcome o;
  o.pass = rho <= -0.8 && anchor >= 1.9 && anchor <= 2.1;
  std::ostringstream d;
  d << "rho " << fmt(rho) << " vs -0.8; smallest eta/b alpha_hat " << fmt(anchor)
    << " vs [1.9, 2.1]; alphas:";
  for (double y : ys) d << " " << fmt(y);
  o.detail = d.str();
  return o;
}

// 6. Output perturbation bound holds on every randomized trial.
Outcome criterion_perturbation_soundness() {
  std::size_t violations = 0;
  double worst_margin = 1e300;
  for (unsigned trial = 0; trial < 1000; ++trial) {
    Engine rng({1006, trial});
    const std::size_t depth = 2 + trial % 3;
    std::vector<std::size_t> arch;
    arch.push_back(2 + static_cast<std::size_t>(rng.uniform() * 6));
    for (std::size_t l = 0; l < depth; ++l) {
      arch.push_back(2 + static_cast<std::size_t>(rng.uniform() * 10));
    }
    FcnWeights net = init_fcn(arch, derive_stream({1006, trial}, 1));
    std::vector<double> kappas;
    for (std::size_t l = 0; l < depth; ++l) kappas.push_back(0.1 + 0.9 * rng.uniform());
    const auto parts = layerwise_magnitude_prune(net, kappas);
    const FcnWeights pruned = assemble_layers(net, parts);

    std::vector<double> norms, eps;
    for (std::size_t l = 0; l < depth; ++l) {
      norms.push_back(norm2(net.layers[l].data()));
      eps.push_back(parts[l].rel_error);
    }
    const double feature_bound = 0.5 + 2.0 * rng.uniform();
    const double cap = perturbation_bound(norms, eps, feature_bound);

    std::vector<double> x(arch[0]);
    for (double& v : x) v = rng.normal();
    const double sc = feature_bound * rng.uniform() / std::max(norm2(x), 1e-12);
    for (double& v : x) v *= sc;

    const auto fa = forward(net, x);
    const auto fb = forward(pruned, x);
    double dev = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) dev += (fa[i] - fb[i]) * (fa[i] - fb[i]);
    dev = std::sqrt(dev);
    if (dev > cap * (1.0 + 1e-12) + 1e-14) {
      ++violations;
    } else {
      worst_margin = std::min(worst_margin, cap - dev);
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = std::to_string(1000 - violations) + "/1000 trials within the bound";
  return o;
}

// 7. Backpropagation matches central finite differences.
Outcome criterion_gradient_check() {
  double worst = 0.0;
  for (unsigned trial = 0; trial < 10; ++trial) {
    FcnWeights net = init_fcn(std::vector<std::size_t>{5, 7, 6, 4},
                              derive_stream({1007, trial}, 1));
    Engine rng({1007, trial});
    std::vector<double> x(5);
    for (double& v : x) v = rng.normal();
    const std::size_t label = trial % 4;
    const LossKind kind = trial % 2 == 0 ? LossKind::softmax_nll : LossKind::squared;

    const FcnWeights grad = loss_gradient(net, x, label, kind);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      for (std::size_t i = 0; i < net.layers[l].rows(); ++i) {
        for (std::size_t j = 0; j < net.layers[l].cols(); ++j) {
          const double w0 = net.layers[l](i, j);
          const double h = 1e-6 * std::max(1.0, std::abs(w0));
          net.layers[l](i, j) = w0 + h;
          const double up = training_loss(net, x, label, kind);
          net.layers[l](i, j) = w0 - h;
          const double down = training_loss(net, x, label, kind);
          net.layers[l](i, j) = w0;
          const double fd = (up - down) / (2.0 * h);
          const double g = grad.layers[l](i, j);
          const double rel =
              std::abs(fd - g) / std::max({std::abs(fd), std::abs(g), 1e-4});
          worst = std::max(worst, rel);
        }
      }
    }
  }
  Outcome o;
  o.pass = worst <= 1e-5;
  o.detail = "max relative error " + fmt(worst) + " vs 1e-5";
  return o;
}

// 8. Singular-value pruning is exact at kappa = 1 and matches the tail sum.
Outcome criterion_svd_exactness() {
  double worst_full = 0.0;
  double worst_gap = 0.0;
  for (unsigned trial = 0; trial < 50; ++trial) {
    Engine rng({1008, trial});
    const std::size_t rows = 30 + (trial * 7) % 90;
    const std::size_t cols = 30 + (trial * 11) % 70;
    Matrix w(rows, cols);
    const bool heavy = trial % 2 == 0;
    const StableParams params{heavy ? 1.6 : 2.0, 1.0};
    for (double& v : w.data()) v = sample_sas_one(params, rng);

    worst_full = std::max(worst_full, svd_prune(w, 1.0).rel_error);

    const double kappa = 0.2 + 0.6 * rng.uniform();
    const auto r = svd_prune(w, kappa);
    const auto svd = jacobi_svd(w);
    const std::size_t kept = std::min(ceil_count(kappa * static_cast<double>(cols)),
                                      svd.singular_values.size());
    double tail = 0.0, total = 0.0;
    for (std::size_t i = 0; i < svd.singular_values.size(); ++i) {
      const double s2 = svd.singular_values[i] * svd.singular_values[i];
      total += s2;
      if (i >= kept) tail += s2;
    }
    worst_gap = std::max(worst_gap, std::abs(r.rel_error - std::sqrt(tail / total)));
  }
  Outcome o;
  o.pass = worst_full <= 1e-10 && worst_gap <= 1e-8;
  o.detail = "kappa=1 worst error " + fmt(worst_full) + " vs 1e-10; tail-sum gap " +
             fmt(worst_gap) + " vs 1e-8";
  return o;
}

// 9. Eigenvalue spectrum of a stable matrix carries tail index alpha/2.
Outcome criterion_spectral_limit() {
  std::vector<double> estimates(10);
  parallel_for(10, [&](std::size_t s) {
    const Matrix w =
        synth_weight_matrix(1.6, 400, 400, SynthMode::independent, derive_stream({1009, 0}, s));
    const auto spec = eigen_spectrum(w, 1.6);
    estimates[s] = estimate_alpha(spec.lambdas).alpha_hat;
  });
  const double med = median(estimates);
  Outcome o;
  o.pass = med >= 0.7 && med <= 0.9;
  o.detail = "median alpha_hat of the spectrum " + fmt(med) + " vs [0.7, 0.9]";
  return o;
}

// 10. Closed-form bound identities at exact tolerances.
Outcome criterion_bound_formulas() {
  std::vector<std::string> failures;
  const auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  expect(binary_entropy(0.0) == 0.0, "h_b(0) = 0");
  expect(binary_entropy(1.0) == 0.0, "h_b(1) = 0");
  expect(epsilon_kappa(1.0, 50.0) == 0.0, "eps_kappa(1, n) = 0");
  expect(rho_epsilon(0.1, 1.0, 24) == 1.0, "rho(1, d) = 1");
  expect(std::abs(rho_epsilon(0.1, 0.0, 24) - 0.1) <= 1e-12, "rho(0, d) = eps");

  bool rho_capped = true;
  for (std::size_t d : {12ul, 20ul, 33ul, 64ul}) {
    for (double eps : {0.02, 0.1, 0.2}) {
      for (int i = 0; i <= 10; ++i) {
        const double kappa = i / 10.0;
        rho_capped = rho_capped &&
                     rho_epsilon(eps, kappa, d) <=
                         std::min(3.0 * std::pow(eps, 1.0 - kappa), 1.0) + 1e-12;
      }
    }
  }
  expect(rho_capped, "rho <= min(3 eps^(1-kappa), 1) on the d >= 12 grid");

  BoundInputs in;
  in.n = 10000;
  in.depth = 2;
  in.layer_params = {60, 40};
  in.d = 100;
  in.epsilon = 0.1;
  in.delta = 0.05;
  in.tau = 1.0;
  in.feature_bound = 1.0;
  in.radius = 2.0;
  double prev = 0.0;
  bool increasing = true;
  for (double k : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    in.layer_kappas = {k, k};
    const double c = gen_bound_pruned(in, 0.0).complexity;
    increasing = increasing && c > prev;
    prev = c;
  }
  expect(increasing, "pruned-bound complexity increasing in kappa");

  Outcome o;
  o.pass = failures.empty();
  if (failures.empty()) {
    o.detail = "entropy conventions, rho identities, complexity monotonicity";
  } else {
    o.detail = "failed:";
    for (const auto& f : failures) o.detail += " [" + f + "]";
  }
  return o;
}

std::string g_self_path;

// HTC_CLI when set, else the htc binary of the same build tree.
std::string locate_cli() {
  if (const char* env = std::getenv("HTC_CLI")) return env;
  std::error_code ec;
  const auto self = std::filesystem::canonical(g_self_path, ec);
  if (ec) return {};
  const auto guess = self.parent_path().parent_path() / "tools" / "htc";
  return std::filesystem::exists(guess) ? guess.string() : std::string{};
}

// 11. Reruns with identical config and seed are byte-identical.
Outcome criterion_determinism() {
  const std::string cli = locate_cli();
  Outcome o;
  if (cli.empty() || !std::filesystem::exists(cli)) {
    o.pass = false;
    o.detail = "cannot locate the htc binary (set HTC_CLI)";
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / "htc_acceptance";
  std::filesystem::create_directories(dir);

  const std::string cfg = (dir / "sweep.json").string();
  std::ofstream(cfg) << R"({"kind":"eta-b","grid":[[0.01,2],[0.015,2]],"dim":30,)"
                     << R"("n":120,"noise":1.0,"iters":300,"tail_iters":100,"seeds":6})";

  const auto shell = [&](const std::string& args) {
    return WEXITSTATUS(std::system((cli + " " + args + " > /dev/null 2>&1").c_str()));
  };
  const auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  };

  const std::string csv_a = (dir / "a.csv").string();
  const std::string csv_b = (dir / "b.csv").string();
  bool ok = shell("sweep --config " + cfg + " --seed 17 --out " + csv_a) == 0;
  ok = ok && shell("sweep --config " + cfg + " --seed 17 --out " + csv_b) == 0;
  const bool csv_same = ok && slurp(csv_a) == slurp(csv_b) && !slurp(csv_a).empty();

  const std::string w_a = (dir / "a.htwt").string();
  const std::string w_b = (dir / "b.htwt").string();
  ok = shell("sample --alpha 1.6 --n 20000 --seed 23 --out " + w_a) == 0;
  ok = ok && shell("sample --alpha 1.6 --n 20000 --seed 23 --out " + w_b) == 0;
  const bool weights_same = ok && slurp(w_a) == slurp(w_b) && !slurp(w_a).empty();

  o.pass = csv_same && weights_same;
  o.detail = std::string("csv rerun ") + (csv_same ? "identical" : "DIFFERS") +
             "; weight rerun " + (weights_same ? "identical" : "DIFFERS");
  return o;
}

}  // namespace

int main(int, char** argv) {
  g_self_path = argv[0];
  std::printf("acceptance suite\n");
  report(1, "estimator-accuracy", 30.0, criterion_estimator_accuracy);
  report(2, "magnitude-error-decay", 120.0, criterion_error_decay);
  report(3, "prunability-vs-alpha", 300.0, criterion_alpha_pruning_trend);
  report(4, "lepage-monotonicity", 5.0, criterion_lepage_monotonicity);
  report(5, "heavy-tails-vs-eta-b", 300.0, criterion_eta_b_trend);
  report(6, "perturbation-soundness", 60.0, criterion_perturbation_soundness);
  report(7, "gradient-check", 10.0, criterion_gradient_check);
  report(8, "svd-exactness", 30.0, criterion_svd_exactness);
  report(9, "spectral-tail-limit", 120.0, criterion_spectral_limit);
  report(10, "bound-identities", 1.0, criterion_bound_formulas);
  report(11, "rerun-determinism", 120.0, criterion_determinism);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
