#include <doctest.h>

#include <cmath>
#include <numeric>

#include "htc/errors.hpp"
#include "htc/pruning.hpp"
#include "htc/stable.hpp"
#include "htc/stats.hpp"
#include "htc/svd.hpp"

using namespace htc;

TEST_CASE("ceil_count snaps near-integers") {
  CHECK(ceil_count(2.3) == 3);
  CHECK(ceil_count(2.0) == 2);
  CHECK(ceil_count(2.0000000001) == 2);
  CHECK(ceil_count(1.9999999999) == 2);
  CHECK(ceil_count(0.0) == 0);
  CHECK_THROWS_AS(ceil_count(-1.0), ParameterError);
}

TEST_CASE("k_best keeps the largest magnitudes") {
  const std::vector<double> x{3, -1, 2, 0.5};
  SUBCASE("two largest") {
    const auto r = k_best(x, 2);
    CHECK(r.pruned == std::vector<double>{3, 0, 2, 0});
    CHECK(r.kept == std::vector<std::uint8_t>{1, 0, 1, 0});
    CHECK(r.kappa == 0.5);
  }
  SUBCASE("k = d is the identity") {
    const auto r = k_best(x, 4);
    CHECK(r.pruned == x);
    CHECK(r.rel_error == 0.0);
    CHECK(r.kappa == 1.0);
  }
  SUBCASE("fractional k rounds up") {
    CHECK(k_best(x, 2.3).kappa == 0.75);  // 3 of 4 kept
  }
  SUBCASE("k beyond d acts as d") {
    CHECK(k_best(x, 9).rel_error == 0.0);
  }
  SUBCASE("k = 0 prunes everything") {
    const auto r = k_best(x, 0);
    CHECK(r.pruned == std::vector<double>{0, 0, 0, 0});
    CHECK(r.rel_error == 1.0);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(k_best(std::vector<double>{}, 1), DomainError);
  }
}

TEST_CASE("k_best breaks magnitude ties toward lower indices") {
  const auto r = k_best(std::vector<double>{1.0, -1.0, 1.0}, 2);
  CHECK(r.kept == std::vector<std::uint8_t>{1, 1, 0});
}

TEST_CASE("relative_lp_error") {
  const std::vector<double> x{3, -1, 2, 0.5};
  CHECK(relative_lp_error(x, x, 2.0) == 0.0);
  CHECK(relative_lp_error(x, std::vector<double>{0, 0, 0, 0}, 2.0) == 1.0);
  const auto r = k_best(x, 2);
  const double oracle = std::sqrt(1.25 / 14.25);  // hand arithmetic
  CHECK(relative_lp_error(x, r.pruned, 2.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r.rel_error == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(0.29617).epsilon(1e-4));

  // p = 0.5 quasi-norm by hand
  CHECK(relative_lp_error(std::vector<double>{1, 1}, std::vector<double>{1, 0}, 0.5) ==
        doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(relative_lp_error(x, std::vector<double>{1, 2}, 2.0), DomainError);
  CHECK_THROWS_AS(
      relative_lp_error(std::vector<double>{0, 0}, std::vector<double>{0, 0}, 2.0),
      DomainError);
}

TEST_CASE("pruning invariants on random vectors") {
  Engine rng({40, 0});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(50);
    for (double& v : x) v = rng.normal();
    const double p = trial % 2 == 0 ? 2.0 : 1.0;

    double prev_err = 2.0;
    for (std::size_t k = 0; k <= x.size(); ++k) {
      const auto r = k_best(x, static_cast<double>(k), p);
      // idempotence (k = 0 leaves a zero vector, outside rel-error's domain)
      if (k > 0) {
        const auto again = k_best(r.pruned, static_cast<double>(k), p);
        CHECK(again.pruned == r.pruned);
      }
      // monotone error
      CHECK(r.rel_error <= prev_err + 1e-15);
      prev_err = r.rel_error;
      // energy ordering
      double min_kept = 1e300, max_pruned = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (r.kept[i]) {
          min_kept = std::min(min_kept, std::abs(x[i]));
        } else {
          max_pruned = std::max(max_pruned, std::abs(x[i]));
        }
      }
      if (k > 0 && k < x.size()) CHECK(min_kept >= max_pruned);
    }
  }
}

TEST_CASE("global magnitude pruning") {
  FcnWeights net;
  net.layers.emplace_back(1, 2, std::vector<double>{1, -4});
  net.layers.emplace_back(2, 1, std::vector<double>{2, 3});

  SUBCASE("kappa = 1 is the identity") {
    const auto r = global_magnitude_prune(net, 1.0);
    CHECK(r.rel_error == 0.0);
    CHECK(r.pruned.layers[0] == net.layers[0]);
    CHECK(r.pruned.layers[1] == net.layers[1]);
  }
  SUBCASE("hand-sorted concatenation") {
    const auto r = global_magnitude_prune(net, 0.5);
    CHECK(r.pruned.layers[0].data()[0] == 0.0);
    CHECK(r.pruned.layers[0].data()[1] == -4.0);
    CHECK(r.pruned.layers[1].data()[0] == 0.0);
    CHECK(r.pruned.layers[1].data()[1] == 3.0);
    CHECK(r.kappa == 0.5);
  }
  SUBCASE("parameter domain") {
    CHECK_THROWS_AS(global_magnitude_prune(net, 0.0), ParameterError);
    CHECK_THROWS_AS(global_magnitude_prune(net, 1.5), ParameterError);
  }
}

TEST_CASE("global pruning beats mismatched layer-wise budgets") {
  // k-best on the concatenation is the optimal support of its size, so the
  // same total budget split badly across layers can only do worse.
  for (unsigned s = 0; s < 5; ++s) {
    Engine rng({41, s});
    FcnWeights net;
    const StableParams params{1.5, 1.0};
    for (int l = 0; l < 2; ++l) {
      Matrix m(100, 100);
      for (double& v : m.data()) v = sample_sas_one(params, rng);
      net.layers.push_back(std::move(m));
    }
    const auto global = global_magnitude_prune(net, 0.3);
    const auto layered = layerwise_magnitude_prune(net, std::vector<double>{0.1, 0.5});
    // combine layer-wise errors into a whole-network l2 error
    double lost = 0.0, total = 0.0;
    for (std::size_t l = 0; l < 2; ++l) {
      const double norm = norm2(net.layers[l].data());
      lost += std::pow(layered[l].rel_error * norm, 2);
      total += norm * norm;
    }
    const double layered_err = std::sqrt(lost / total);
    CHECK(global.rel_error <= layered_err + 1e-12);
  }
}

TEST_CASE("layer-wise magnitude pruning") {
  FcnWeights net;
  net.layers.emplace_back(2, 2, std::vector<double>{1, -4, 2, 3});

  SUBCASE("kappa = 1 everywhere is the identity") {
    FcnWeights two;
    two.layers.emplace_back(1, 2, std::vector<double>{1, -4});
    two.layers.emplace_back(2, 1, std::vector<double>{2, 3});
    const auto rs = layerwise_magnitude_prune(two, std::vector<double>{1.0, 1.0});
    CHECK(rs[0].rel_error == 0.0);
    CHECK(rs[1].rel_error == 0.0);
    const auto back = assemble_layers(two, rs);
    CHECK(back.layers[0] == two.layers[0]);
  }
  SUBCASE("single layer equals global pruning") {
    const auto layered = layerwise_magnitude_prune(net, std::vector<double>{0.5});
    const auto global = global_magnitude_prune(net, 0.5);
    const auto flat = global.pruned.flatten();
    CHECK(layered[0].pruned == flat);
    CHECK(layered[0].rel_error == global.rel_error);
  }
  SUBCASE("kappa list must match the layer count") {
    CHECK_THROWS_AS(layerwise_magnitude_prune(net, std::vector<double>{0.5, 0.5}),
                    ParameterError);
  }
}

TEST_CASE("layer-wise error shrinks with layer width (Monte Carlo)") {
  const StableParams params{1.5, 1.0};
  std::vector<double> med_small, med_large;
  for (unsigned s = 0; s < 20; ++s) {
    Engine rng({42, s});
    std::vector<double> small(1000), large(100000);
    for (double& v : small) v = sample_sas_one(params, rng);
    for (double& v : large) v = sample_sas_one(params, rng);
    med_small.push_back(k_best(small, 0.1 * small.size()).rel_error);
    med_large.push_back(k_best(large, 0.1 * large.size()).rel_error);
  }
  CHECK(median(med_large) < median(med_small));
}

TEST_CASE("svd pruning") {
  Engine rng({43, 0});
  SUBCASE("kappa = 1 reconstructs") {
    Matrix w(30, 20);
    for (double& v : w.data()) v = rng.normal();
    const auto r = svd_prune(w, 1.0);
    CHECK(r.rel_error <= 1e-10);
    CHECK(r.kappa == 1.0);
  }
  SUBCASE("rank-1 matrices compress for free") {
    Matrix w(12, 10);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 10; ++j) w(i, j) = (i + 1.0) * (j + 0.5);
    }
    CHECK(svd_prune(w, 0.1).rel_error <= 1e-10);  // ceil(1) = 1 value kept
  }
  SUBCASE("error matches the singular-value tail sum") {
    Matrix w(200, 200);
    for (double& v : w.data()) v = rng.normal();
    const auto r = svd_prune(w, 0.5);
    const auto svd = jacobi_svd(w);
    double tail = 0.0, total = 0.0;
    for (std::size_t i = 0; i < svd.singular_values.size(); ++i) {
      const double s2 = svd.singular_values[i] * svd.singular_values[i];
      total += s2;
      if (i >= 100) tail += s2;
    }
    CHECK(r.rel_error == doctest::Approx(std::sqrt(tail / total)).epsilon(1e-8));
  }
  SUBCASE("svd pruning is the Frobenius-optimal value selection") {
    Matrix w(12, 12);
    for (double& v : w.data()) v = rng.normal();
    const auto r = svd_prune(w, 0.25);  // 3 of 12 kept
    const auto svd = jacobi_svd(w);
    std::vector<double> sq(12);
    for (std::size_t i = 0; i < 12; ++i) {
      sq[i] = svd.singular_values[i] * svd.singular_values[i];
    }
    const double total = std::accumulate(sq.begin(), sq.end(), 0.0);
    const double kept_best = sq[0] + sq[1] + sq[2];
    // any other selection of 3 singular values keeps less energy
    for (std::size_t a = 0; a < 12; ++a) {
      for (std::size_t b = a + 1; b < 12; ++b) {
        for (std::size_t c = b + 1; c < 12; ++c) {
          const double kept = sq[a] + sq[b] + sq[c];
          const double err = std::sqrt((total - kept) / total);
          CHECK(r.rel_error <= err + 1e-12);
        }
      }
    }
    CHECK(r.rel_error ==
          doctest::Approx(std::sqrt((total - kept_best) / total)).epsilon(1e-8));
  }
  SUBCASE("param_kappa follows the factor storage convention") {
    Matrix w(10, 8);
    for (double& v : w.data()) v = rng.normal();
    const auto r = svd_prune(w, 0.25);  // ceil(2) of 8
    CHECK(r.kappa == 0.25);
    CHECK(r.param_kappa == doctest::Approx(2.0 * 19.0 / 80.0));
  }
  SUBCASE("domain errors") {
    Matrix w(3, 3);
    CHECK_THROWS_AS(svd_prune(w, 0.0), ParameterError);
    Matrix bad(2, 2, {1.0, INFINITY, 0.0, 1.0});
    CHECK_THROWS_AS(svd_prune(bad, 0.5), DomainError);
  }
}

TEST_CASE("eigen_spectrum") {
  SUBCASE("identity matrix") {
    const auto spec = eigen_spectrum(Matrix::identity(5), 1.0);
    REQUIRE(spec.lambdas.size() == 5);
    for (double l : spec.lambdas) CHECK(l == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(spec.normalization == 2.0);
  }
  SUBCASE("eigenvalues are scaled squared singular values") {
    Engine rng({44, 0});
    Matrix w(40, 30);
    const StableParams params{1.6, 1.0};
    for (double& v : w.data()) v = sample_sas_one(params, rng);
    const auto spec = eigen_spectrum(w, 1.6);
    const auto svd = jacobi_svd(w);
    const double scale = std::pow(40.0, -2.0 / 1.6);
    REQUIRE(spec.lambdas.size() == 30);
    for (std::size_t i = 0; i < 30; ++i) {
      const double ref = svd.singular_values[i] * svd.singular_values[i] * scale;
      CHECK(spec.lambdas[i] ==
            doctest::Approx(ref).epsilon(1e-8).scale(std::max(ref, 1e-12)));
    }
    for (std::size_t i = 0; i + 1 < 30; ++i) CHECK(spec.lambdas[i] >= spec.lambdas[i + 1]);
    for (double l : spec.lambdas) CHECK(l >= 0.0);
  }
  SUBCASE("alpha domain") {
    CHECK_THROWS_AS(eigen_spectrum(Matrix::identity(3), 2.0), ParameterError);
  }
}

TEST_CASE("node pruning") {
  SUBCASE("an all-zero column is free to drop") {
    Matrix w(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      w(i, 0) = 1.0;
      w(i, 1) = 2.0;
      w(i, 3) = 0.5;  // column 2 stays zero
    }
    const auto r = node_prune(w, 3.0 / 4.0, 2.0);
    CHECK(r.rel_error == 0.0);
  }
  SUBCASE("kappa = 1 is the identity") {
    Matrix w(2, 3, {1, 2, 3, 4, 5, 6});
    const auto r = node_prune(w, 1.0, 2.0);
    CHECK(r.pruned == w);
    CHECK(r.rel_error == 0.0);
  }
  SUBCASE("hand-computed column norms") {
    Matrix w(2, 2, {1, 3, 2, 0});
    const auto r = node_prune(w, 0.5, 2.0);
    // column 0 has norm sqrt(5) < 3 = column 1's norm
    CHECK(r.pruned == Matrix(2, 2, {0, 3, 0, 0}));
    CHECK(r.kept == std::vector<std::uint8_t>{0, 1});
    CHECK(r.rel_error == doctest::Approx(std::sqrt(5.0 / 14.0)).epsilon(1e-12));
  }
  SUBCASE("degenerate input") {
    CHECK_THROWS_AS(node_prune(Matrix(), 0.5, 2.0), DomainError);
    CHECK_THROWS_AS(node_prune(Matrix(2, 2, {1, 1, 1, 1}), 0.5, 0.0), ParameterError);
  }
}

TEST_CASE("column pruning error shrinks with width (Monte Carlo)") {
  const StableParams params{1.5, 1.0};
  std::vector<double> med_by_width;
  for (std::size_t width : {30ul, 300ul, 3000ul}) {
    std::vector<double> errs;
    for (unsigned s = 0; s < 20; ++s) {
      Engine rng({45, static_cast<std::uint64_t>(width * 100 + s)});
      Matrix w(50, width);
      for (double& v : w.data()) v = sample_sas_one(params, rng);
      errs.push_back(node_prune(w, 0.3, 2.0).rel_error);
    }
    med_by_width.push_back(median(errs));
  }
  CHECK(med_by_width[1] < med_by_width[0]);
  CHECK(med_by_width[2] < med_by_width[1]);
}

TEST_CASE("min_kappa") {
  const std::vector<double> x{3, -1, 2, 0.5};
  SUBCASE("epsilon >= 1 needs nothing") {
    CHECK(min_kappa(x, 1.0, 2.0) == 0.0);
    CHECK(min_kappa(x, 2.0, 2.0) == 0.0);
  }
  SUBCASE("epsilon = 0 with nonzero entries needs everything") {
    CHECK(min_kappa(x, 0.0, 2.0) == 1.0);
  }
  SUBCASE("negative epsilon is rejected") {
    CHECK_THROWS_AS(min_kappa(x, -0.1, 2.0), ParameterError);
  }
  SUBCASE("binary search is exact") {
    Engine rng({46, 0});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> v(200);
      for (double& w : v) w = rng.normal();
      const double eps = 0.05 + 0.2 * rng.uniform();
      const double kappa = min_kappa(v, eps, 2.0);
      const auto k = static_cast<std::size_t>(kappa * 200.0 + 0.5);
      CHECK(k_best(v, static_cast<double>(k)).rel_error <= eps);
      if (k > 0) CHECK(k_best(v, static_cast<double>(k - 1)).rel_error > eps);
    }
  }
  SUBCASE("heavier tails compress further (Monte Carlo)") {
    std::vector<double> k15, k19;
    for (unsigned s = 0; s < 20; ++s) {
      const auto a = sample_sas({1.5, 1.0}, 100000, RngSeed{47, s});
      const auto b = sample_sas({1.9, 1.0}, 100000, RngSeed{48, s});
      k15.push_back(min_kappa(a, 0.1, 2.0));
      k19.push_back(min_kappa(b, 0.1, 2.0));
    }
    CHECK(median(k15) < median(k19));
  }
}

TEST_CASE("compress_curve") {
  Engine rng({49, 0});
  std::vector<double> x(500);
  for (double& v : x) v = rng.normal();

  SUBCASE("kappa = 1 endpoint is exact zero") {
    const auto c = compress_curve(x, 2.0, std::vector<double>{1.0});
    CHECK(c[0] == 0.0);
  }
  SUBCASE("one-point grid equals the direct call") {
    const auto c = compress_curve(x, 2.0, std::vector<double>{0.37});
    const auto direct = k_best(x, 0.37 * 500.0);
    CHECK(c[0] == direct.rel_error);
  }
  SUBCASE("curve is nonincreasing and matches per-point calls") {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(i / 20.0);
    const auto c = compress_curve(x, 2.0, grid);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i] >= c[i + 1]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(c[i] == doctest::Approx(k_best(x, grid[i] * 500.0).rel_error).epsilon(1e-12));
    }
  }
  SUBCASE("grid domain") {
    CHECK_THROWS_AS(compress_curve(x, 2.0, std::vector<double>{0.0}), ParameterError);
  }
}

TEST_CASE("magnitude pruning error decays with dimension (Monte Carlo)") {
  const StableParams params{1.7, 1.0};
  std::vector<double> med;
  for (std::size_t d : {100ul, 10000ul, 1000000ul}) {
    std::vector<double> errs;
    for (unsigned s = 0; s < 20; ++s) {
      Engine rng({50, d + s});
      std::vector<double> x(d);
      for (double& v : x) v = sample_sas_one(params, rng);
      errs.push_back(k_best(x, 0.3 * static_cast<double>(d)).rel_error);
    }
    med.push_back(median(errs));
  }
  CHECK(med[1] < med[0]);
  CHECK(med[2] < med[1]);
}

TEST_CASE("expected error grows with alpha below the index (Monte Carlo)") {
  // p < min(alpha): heavier tails give the smaller expected relative error.
  std::vector<double> light, heavy;
  for (unsigned s = 0; s < 50; ++s) {
    const auto a = sample_sas({1.2, 1.0}, 10000, RngSeed{51, s});
    const auto b = sample_sas({1.8, 1.0}, 10000, RngSeed{52, s});
    light.push_back(k_best(a, 2000.0, 1.0).rel_error);
    heavy.push_back(k_best(b, 2000.0, 1.0).rel_error);
  }
  CHECK(mean(light) < mean(heavy));
}
