// htc: heavy-tail compressibility toolkit command line.
//
// Subcommands: sample, estimate-alpha, prune, train, sweep, bound, synth.
// Exit codes: 0 success, 2 usage/parameter/format error, 3 numeric or
// divergence error. Every output file gets a <file>.manifest.json next to it.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "htc/bounds.hpp"
#include "htc/csv.hpp"
#include "htc/errors.hpp"
#include "htc/experiments.hpp"
#include "htc/manifest.hpp"
#include "htc/matrix.hpp"
#include "htc/network.hpp"
#include "htc/pruning.hpp"
#include "htc/stable.hpp"
#include "htc/tail_index.hpp"
#include "htc/version.hpp"
#include "htc/weight_file.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
  std::string config_path;
};

htc::RngSeed seed_of(const CommonOpts& c) { return {c.seed, c.stream}; }

void add_common(CLI::App* cmd, CommonOpts& c, bool need_out) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--stream", c.stream, "RNG stream id");
  auto* out = cmd->add_option("--out", c.out, "output path");
  if (need_out) out->required();
  cmd->add_option("--config", c.config_path, "JSON config file");
}

json load_config(const CommonOpts& c) {
  if (c.config_path.empty()) return json::object();
  std::ifstream in(c.config_path);
  if (!in) throw htc::IoError("cannot open config: " + c.config_path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw htc::FormatError("config " + c.config_path + ": " + e.what());
  }
  return j;
}

htc::RunManifest start_manifest(const std::string& command, int argc, char** argv,
                                const CommonOpts& c, const json& config) {
  htc::RunManifest m;
  m.command = command;
  m.argv.assign(argv, argv + argc);
  m.config_json = config.dump();
  m.seed = seed_of(c);
  m.version = std::string("htc ") + htc::kVersion;
  m.started = htc::utc_timestamp();
  return m;
}

void finish_manifest(htc::RunManifest& m, const std::string& out_path) {
  m.finished = htc::utc_timestamp();
  m.outputs.push_back(out_path);
  htc::write_manifest(m, out_path);
}

// ---------------------------------------------------------------- sample --

struct SampleOpts {
  CommonOpts common;
  double alpha = 1.5;
  double sigma = 1.0;
  std::size_t n = 1000;
  bool positive = false;
  std::size_t elliptic_dim = 0;
};

int run_sample(const SampleOpts& o, int argc, char** argv) {
  auto manifest = start_manifest("sample", argc, argv, o.common, json::object());
  htc::Matrix m;
  if (o.positive) {
    auto v = htc::sample_positive_stable(o.alpha, o.n, seed_of(o.common));
    m = htc::Matrix(1, o.n, std::move(v));
  } else if (o.elliptic_dim > 0) {
    m = htc::sample_elliptic_sas({o.alpha, o.elliptic_dim}, o.n, seed_of(o.common));
  } else {
    auto v = htc::sample_sas({o.alpha, o.sigma}, o.n, seed_of(o.common));
    m = htc::Matrix(1, o.n, std::move(v));
  }
  htc::write_weight_file(o.common.out, std::vector<htc::Matrix>{m});
  finish_manifest(manifest, o.common.out);
  std::cout << "wrote " << m.rows() << "x" << m.cols() << " samples to " << o.common.out
            << "\n";
  return 0;
}

// --------------------------------------------------------- estimate-alpha --

struct EstimateOpts {
  CommonOpts common;
  std::string in;
  std::size_t k1 = 0;
  bool raw = false;  // skip the median-centering protocol
};

int run_estimate(const EstimateOpts& o, int argc, char** argv) {
  const auto layers = htc::read_weight_file(o.in);
  const std::optional<std::size_t> k1 =
      o.k1 > 0 ? std::optional<std::size_t>(o.k1) : std::nullopt;

  json report;
  report["input"] = o.in;
  report["centered"] = !o.raw;
  std::vector<htc::TailIndexEstimate> per_layer;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto est = o.raw ? htc::estimate_alpha(layers[l].data(), k1)
                           : htc::estimate_alpha_centered(layers[l].data(), k1);
    per_layer.push_back(est);
    report["layers"].push_back({{"layer", l + 1},
                                {"alpha_hat", est.alpha_hat},
                                {"k1", est.k1},
                                {"k2", est.k2},
                                {"n_used", est.n_used}});
    std::cout << "layer " << (l + 1) << ": alpha_hat = " << est.alpha_hat
              << " (k1=" << est.k1 << ", k2=" << est.k2 << ")\n";
  }
  const double mean_alpha = htc::mean_layer_alpha(per_layer);
  report["mean_alpha_hat"] = mean_alpha;
  std::cout << "mean alpha_hat = " << mean_alpha << "\n";

  if (!o.common.out.empty()) {
    auto manifest = start_manifest("estimate-alpha", argc, argv, o.common, json::object());
    std::ofstream out(o.common.out);
    if (!out) throw htc::IoError("cannot open " + o.common.out);
    out << report.dump(2) << "\n";
    out.close();
    finish_manifest(manifest, o.common.out);
  }
  return 0;
}

// ----------------------------------------------------------------- prune --

struct PruneOpts {
  CommonOpts common;
  std::string in;
  std::string scheme = "global";
  double kappa = 1.0;
  std::vector<double> kappas;
  double p = 2.0;
  bool center = false;  // apply the median centering protocol
};

int run_prune(const PruneOpts& o, int argc, char** argv) {
  auto manifest = start_manifest("prune", argc, argv, o.common, json::object());
  const auto layers = htc::read_weight_file(o.in);

  json report;
  report["scheme"] = o.scheme;
  report["p"] = o.p;

  std::vector<htc::Matrix> pruned;
  if (o.scheme == "global") {
    htc::FcnWeights net{layers};
    if (o.center) {
      pruned = htc::prune_with_protocol(net, htc::PruneScheme::global_magnitude, o.kappa,
                                        o.p)
                   .layers;
    } else {
      auto r = htc::global_magnitude_prune(net, o.kappa, o.p);
      report["kappa"] = r.kappa;
      report["rel_error"] = r.rel_error;
      pruned = std::move(r.pruned.layers);
    }
  } else if (o.scheme == "layerwise") {
    std::vector<double> ks = o.kappas.empty()
                                 ? std::vector<double>(layers.size(), o.kappa)
                                 : o.kappas;
    if (ks.size() != layers.size()) {
      throw htc::ParameterError("--kappas must list one value per layer");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      std::vector<double> flat(layers[l].data().begin(), layers[l].data().end());
      double med = 0.0;
      if (o.center) {
        auto [centered, m] = htc::center_median(flat);
        flat = std::move(centered);
        med = m;
      }
      auto r = htc::k_best(flat, ks[l] * static_cast<double>(flat.size()), o.p);
      if (o.center) {
        for (double& v : r.pruned) v += med;
      }
      report["layers"].push_back(
          {{"layer", l + 1}, {"kappa", r.kappa}, {"rel_error", r.rel_error}});
      pruned.emplace_back(layers[l].rows(), layers[l].cols(), std::move(r.pruned));
    }
  } else if (o.scheme == "svd" || o.scheme == "node") {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      htc::Matrix work = layers[l];
      double med = 0.0;
      if (o.center) {
        auto [centered, m] = htc::center_median(work.data());
        work = htc::Matrix(work.rows(), work.cols(), std::move(centered));
        med = m;
      }
      auto r = o.scheme == "svd" ? htc::svd_prune(work, o.kappa)
                                 : htc::node_prune(work, o.kappa, o.p);
      if (o.center) {
        for (double& v : r.pruned.data()) v += med;
      }
      report["layers"].push_back({{"layer", l + 1},
                                  {"kappa", r.kappa},
                                  {"param_kappa", r.param_kappa},
                                  {"rel_error", r.rel_error}});
      pruned.push_back(std::move(r.pruned));
    }
  } else {
    throw htc::ParameterError("unknown scheme: " + o.scheme +
                              " (expected global|layerwise|svd|node)");
  }

  htc::write_weight_file(o.common.out, pruned);
  finish_manifest(manifest, o.common.out);
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- train --

htc::Dataset dataset_from_config(const json& j, htc::RngSeed fallback_seed) {
  const std::size_t n = j.value("n", 2048);
  const std::size_t dim = j.value("dim", 2);
  const double separation = j.value("separation", 3.0);
  htc::RngSeed seed = fallback_seed;
  if (j.contains("seed")) seed = {j["seed"].get<std::uint64_t>(), j.value("stream", 0ull)};
  return htc::make_gaussian_mixture(n, dim, separation, seed);
}

int run_train(const CommonOpts& common, int argc, char** argv) {
  const json cfg = load_config(common);
  if (!cfg.contains("arch")) throw htc::ParameterError("train config needs \"arch\"");
  auto manifest = start_manifest("train", argc, argv, common, cfg);

  const std::vector<std::size_t> arch = cfg["arch"].get<std::vector<std::size_t>>();
  const htc::Dataset train =
      dataset_from_config(cfg.value("data", json::object()), derive_stream(seed_of(common), 1));

  htc::SgdConfig sgd;
  sgd.eta = cfg.value("eta", 0.05);
  sgd.batch = cfg.value("batch", 16);
  sgd.iters = cfg.value("iters", 5000);
  sgd.loss = cfg.value("loss", std::string("nll")) == "squared" ? htc::LossKind::squared
                                                                : htc::LossKind::softmax_nll;
  sgd.mode = cfg.value("replacement", false) ? htc::BatchMode::with_replacement
                                             : htc::BatchMode::without_replacement;
  sgd.seed = derive_stream(seed_of(common), 2);

  htc::FcnWeights net = htc::init_fcn(arch, derive_stream(seed_of(common), 3));
  htc::SgdDriver driver(std::move(net), train, sgd);
  driver.run(sgd.iters);

  htc::FcnWeights final_weights = driver.weights();
  const std::size_t tail_iters = cfg.value("tail_iters", 0);
  if (driver.status() == htc::SgdStatus::ok && tail_iters > 0) {
    auto tail = driver.tail_average(tail_iters);
    if (tail.status == htc::SgdStatus::ok) final_weights = std::move(tail.weights);
  }

  if (driver.status() == htc::SgdStatus::diverged) {
    manifest.divergence_flags.push_back("sgd diverged after " +
                                        std::to_string(driver.steps_run()) + " steps");
    htc::write_weight_file(common.out, driver.weights());
    finish_manifest(manifest, common.out);
    std::cerr << "training diverged (||w|| exceeded the guard)\n";
    throw htc::DivergenceError("training diverged");
  }

  htc::write_weight_file(common.out, final_weights);
  finish_manifest(manifest, common.out);

  const double acc = htc::accuracy(final_weights, train);
  std::cout << "trained " << arch.size() - 1 << "-layer net, " << driver.steps_run()
            << " steps, train accuracy " << acc << ", weights in " << common.out << "\n";
  return 0;
}

// ----------------------------------------------------------------- sweep --

htc::SynthMode mode_from_string(const std::string& s) {
  if (s == "independent") return htc::SynthMode::independent;
  if (s == "column" || s == "column_correlated") return htc::SynthMode::column_correlated;
  if (s == "full" || s == "fully_correlated") return htc::SynthMode::fully_correlated;
  throw htc::ParameterError("unknown synth mode: " + s);
}

std::string mode_name(htc::SynthMode m) {
  switch (m) {
    case htc::SynthMode::independent: return "independent";
    case htc::SynthMode::column_correlated: return "column_correlated";
    case htc::SynthMode::fully_correlated: return "fully_correlated";
  }
  return "?";
}

htc::Table eta_b_table(const std::vector<htc::EtaBRow>& rows) {
  htc::Table t;
  t.header = {"eta", "batch", "eta_over_b", "mean_alpha_hat", "diverged", "seeds"};
  for (const auto& r : rows) {
    t.append({r.eta, static_cast<std::int64_t>(r.batch), r.eta_over_b, r.mean_alpha_hat,
              static_cast<std::int64_t>(r.diverged), static_cast<std::int64_t>(r.seeds)});
  }
  return t;
}

int run_sweep(const CommonOpts& common, int argc, char** argv) {
  const json cfg = load_config(common);
  if (!cfg.contains("kind")) throw htc::ParameterError("sweep config needs \"kind\"");
  auto manifest = start_manifest("sweep", argc, argv, common, cfg);
  const std::string kind = cfg["kind"];

  htc::Table table;
  if (kind == "eta-b") {
    htc::EtaBSpec spec;
    for (const auto& p : cfg.at("grid")) {
      spec.grid.emplace_back(p.at(0).get<double>(), p.at(1).get<std::size_t>());
    }
    spec.problem.dim = cfg.value("dim", 100);
    spec.problem.n = cfg.value("n", 1000);
    spec.problem.noise = cfg.value("noise", 1.0);
    spec.iters = cfg.value("iters", 6000);
    spec.tail_iters = cfg.value("tail_iters", 1000);
    spec.seeds = cfg.value("seeds", 320);
    spec.seed = seed_of(common);
    const auto rows = htc::eta_b_sweep(spec);
    table = eta_b_table(rows);
    for (const auto& r : rows) {
      if (r.diverged > 0) {
        manifest.divergence_flags.push_back("eta=" + std::to_string(r.eta) + " b=" +
                                            std::to_string(r.batch) + ": " +
                                            std::to_string(r.diverged) + " of " +
                                            std::to_string(r.seeds) + " runs diverged");
      }
    }
  } else if (kind == "dim-scaling") {
    htc::DimScalingSpec spec;
    spec.alpha = cfg.value("alpha", 1.7);
    spec.p = cfg.value("p", 2.0);
    spec.kappa = cfg.value("kappa", 0.1);
    spec.dims = cfg.at("dims").get<std::vector<std::size_t>>();
    spec.seeds = cfg.value("seeds", 20);
    spec.seed = seed_of(common);
    table.header = {"dim", "median_rel_error"};
    for (const auto& r : htc::dim_scaling(spec)) {
      table.append({static_cast<std::int64_t>(r.dim), r.median_rel_error});
    }
  } else if (kind == "alpha-pruning") {
    htc::AlphaPruningSpec spec;
    spec.alphas = cfg.at("alphas").get<std::vector<double>>();
    spec.rows = cfg.value("rows", 500);
    spec.cols = cfg.value("cols", 500);
    spec.epsilon = cfg.value("epsilon", 0.1);
    spec.p = cfg.value("p", 2.0);
    spec.seeds = cfg.value("seeds", 10);
    spec.seed = seed_of(common);
    const auto mode = mode_from_string(cfg.value("mode", "independent"));
    table.header = {"mode", "alpha", "pruning_ratio"};
    for (const auto& r : htc::alpha_vs_pruning(spec, mode)) {
      table.append({mode_name(mode), r.alpha, r.pruning_ratio});
    }
  } else if (kind == "prune-accuracy") {
    std::vector<htc::FcnWeights> nets;
    for (const auto& path : cfg.at("nets")) {
      nets.push_back(htc::read_network(path.get<std::string>()));
    }
    const htc::Dataset test = dataset_from_config(cfg.at("test"), derive_stream(seed_of(common), 99));
    const auto kappas = cfg.at("kappas").get<std::vector<double>>();
    const std::string scheme_name = cfg.value("scheme", "layerwise");
    htc::PruneScheme scheme = htc::PruneScheme::layerwise_magnitude;
    if (scheme_name == "global") scheme = htc::PruneScheme::global_magnitude;
    else if (scheme_name == "layerwise") scheme = htc::PruneScheme::layerwise_magnitude;
    else if (scheme_name == "svd") scheme = htc::PruneScheme::svd;
    else if (scheme_name == "node") scheme = htc::PruneScheme::node;
    else throw htc::ParameterError("unknown scheme: " + scheme_name);
    table.header = {"net", "alpha_hat", "kappa", "pruning_ratio", "rel_accuracy"};
    for (const auto& r :
         htc::prune_accuracy_sweep(nets, scheme, kappas, test, cfg.value("p", 2.0))) {
      table.append({static_cast<std::int64_t>(r.net_id), r.alpha_hat, r.kappa,
                    r.pruning_ratio, r.rel_accuracy});
    }
  } else {
    throw htc::ParameterError("unknown sweep kind: " + kind);
  }

  htc::write_csv(table, common.out);
  finish_manifest(manifest, common.out);
  std::cout << "wrote " << table.rows.size() << " rows to " << common.out << "\n";
  return 0;
}

// ----------------------------------------------------------------- bound --

int run_bound(const CommonOpts& common, int argc, char** argv) {
  const json cfg = load_config(common);
  auto manifest = start_manifest("bound", argc, argv, common, cfg);

  htc::BoundInputs in;
  in.n = cfg.at("n").get<double>();
  in.d = cfg.at("d").get<std::size_t>();
  in.layer_params = cfg.at("layer_params").get<std::vector<std::size_t>>();
  in.layer_kappas = cfg.at("layer_kappas").get<std::vector<double>>();
  in.epsilon = cfg.value("epsilon", 0.0);
  in.delta = cfg.value("delta", 0.05);
  in.tau = cfg.value("tau", 1.0);
  in.feature_bound = cfg.value("B", 1.0);
  in.depth = cfg.value("L", in.layer_params.size());
  in.radius = cfg.value("R", 1.0);

  const std::string which = cfg.value("which", "pruned");
  const double risk = cfg.value("risk", 0.0);

  json report;
  report["which"] = which;
  report["kappa"] = htc::effective_kappa(in);
  if (which == "pruned") {
    const auto b = htc::gen_bound_pruned(in, risk);
    report["bound"] = b.bound;
    report["gamma"] = b.gamma;
    report["complexity"] = b.complexity;
    report["eps_kappa"] = b.eps_kappa;
    report["failure_prob"] = b.failure_prob;
  } else if (which == "original") {
    const auto b = htc::gen_bound_original(in, risk);
    report["bound"] = b.bound;
    report["rho"] = b.rho;
    report["complexity"] = b.complexity;
    report["failure_prob"] = b.failure_prob;
  } else if (which == "stable") {
    const auto alphas = cfg.at("alphas").get<std::vector<double>>();
    const auto b = htc::gen_bound_stable(in, cfg.at("sigma0").get<double>(), alphas, risk);
    report["bound"] = b.bound;
    report["gamma"] = b.gamma;
    report["a"] = b.a_coeff;
    report["b_eps"] = b.b_eps;
    report["complexity"] = b.complexity;
    report["failure_prob"] = b.failure_prob;
  } else {
    throw htc::ParameterError("unknown bound: " + which +
                              " (expected pruned|original|stable)");
  }

  std::cout << report.dump(2) << "\n";
  if (!common.out.empty()) {
    std::ofstream out(common.out);
    if (!out) throw htc::IoError("cannot open " + common.out);
    out << report.dump(2) << "\n";
    out.close();
    finish_manifest(manifest, common.out);
  }
  return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthOpts {
  CommonOpts common;
  double alpha_min = 1.75;
  double alpha_max = 2.0;
  std::size_t alpha_count = 10;
  std::size_t rows = 500;
  std::size_t cols = 500;
  double epsilon = 0.1;
  double p = 2.0;
  std::size_t seeds = 10;
};

int run_synth(const SynthOpts& o, int argc, char** argv) {
  auto manifest = start_manifest("synth", argc, argv, o.common, json::object());
  htc::AlphaPruningSpec spec;
  for (std::size_t i = 0; i < o.alpha_count; ++i) {
    const double t = o.alpha_count == 1
                         ? 0.0
                         : static_cast<double>(i) / static_cast<double>(o.alpha_count - 1);
    spec.alphas.push_back(o.alpha_min + t * (o.alpha_max - o.alpha_min));
  }
  spec.rows = o.rows;
  spec.cols = o.cols;
  spec.epsilon = o.epsilon;
  spec.p = o.p;
  spec.seeds = o.seeds;

  htc::Table table;
  table.header = {"mode", "alpha", "pruning_ratio"};
  std::size_t mode_idx = 0;
  for (const auto mode : {htc::SynthMode::independent, htc::SynthMode::column_correlated,
                          htc::SynthMode::fully_correlated}) {
    spec.seed = derive_stream(seed_of(o.common), mode_idx++);
    for (const auto& r : htc::alpha_vs_pruning(spec, mode)) {
      table.append({mode_name(mode), r.alpha, r.pruning_ratio});
    }
  }
  htc::write_csv(table, o.common.out);
  finish_manifest(manifest, o.common.out);
  std::cout << "wrote " << table.rows.size() << " rows to " << o.common.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heavy-tail compressibility toolkit"};
  app.require_subcommand(1);

  SampleOpts sample;
  auto* cmd_sample = app.add_subcommand("sample", "draw stable samples into a weight file");
  cmd_sample->add_option("--alpha", sample.alpha, "tail index");
  cmd_sample->add_option("--sigma", sample.sigma, "scale");
  cmd_sample->add_option("--n", sample.n, "sample count");
  cmd_sample->add_flag("--positive", sample.positive, "totally skewed positive stable");
  cmd_sample->add_option("--elliptic-dim", sample.elliptic_dim,
                         "sample elliptic vectors of this dimension");
  add_common(cmd_sample, sample.common, true);

  EstimateOpts est;
  auto* cmd_est = app.add_subcommand("estimate-alpha", "tail index of a weight file");
  cmd_est->add_option("--in", est.in, "input weight file")->required();
  cmd_est->add_option("--k1", est.k1, "estimator block size (default floor(sqrt(K)))");
  cmd_est->add_flag("--raw", est.raw, "skip median centering");
  add_common(cmd_est, est.common, false);

  PruneOpts prune;
  auto* cmd_prune = app.add_subcommand("prune", "prune a weight file");
  cmd_prune->add_option("--in", prune.in, "input weight file")->required();
  cmd_prune->add_option("--scheme", prune.scheme, "global|layerwise|svd|node");
  cmd_prune->add_option("--kappa", prune.kappa, "remaining parameter ratio");
  cmd_prune->add_option("--kappas", prune.kappas, "per-layer ratios (layerwise)");
  cmd_prune->add_option("--p", prune.p, "norm order");
  cmd_prune->add_flag("--center", prune.center, "median-center before pruning, restore after");
  add_common(cmd_prune, prune.common, true);

  CommonOpts train_common;
  auto* cmd_train = app.add_subcommand("train", "train a ReLU net on synthetic data");
  add_common(cmd_train, train_common, true);

  CommonOpts sweep_common;
  auto* cmd_sweep = app.add_subcommand("sweep", "run a configured sweep to CSV");
  add_common(cmd_sweep, sweep_common, true);

  CommonOpts bound_common;
  auto* cmd_bound = app.add_subcommand("bound", "evaluate generalization bounds");
  add_common(cmd_bound, bound_common, false);

  SynthOpts synth;
  auto* cmd_synth = app.add_subcommand("synth", "synthetic correlated-matrix study");
  cmd_synth->add_option("--alpha-min", synth.alpha_min, "grid start");
  cmd_synth->add_option("--alpha-max", synth.alpha_max, "grid end");
  cmd_synth->add_option("--alpha-count", synth.alpha_count, "grid size");
  cmd_synth->add_option("--rows", synth.rows, "matrix rows");
  cmd_synth->add_option("--cols", synth.cols, "matrix cols");
  cmd_synth->add_option("--epsilon", synth.epsilon, "relative error target");
  cmd_synth->add_option("--p", synth.p, "norm order");
  cmd_synth->add_option("--seeds", synth.seeds, "seeds per grid point");
  add_common(cmd_synth, synth.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_sample->parsed()) return run_sample(sample, argc, argv);
    if (cmd_est->parsed()) return run_estimate(est, argc, argv);
    if (cmd_prune->parsed()) return run_prune(prune, argc, argv);
    if (cmd_train->parsed()) return run_train(train_common, argc, argv);
    if (cmd_sweep->parsed()) return run_sweep(sweep_common, argc, argv);
    if (cmd_bound->parsed()) return run_bound(bound_common, argc, argv);
    if (cmd_synth->parsed()) return run_synth(synth, argc, argv);
  } catch (const htc::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const htc::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const htc::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const htc::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const htc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
