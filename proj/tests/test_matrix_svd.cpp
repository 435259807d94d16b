#include <doctest.h>

#include <cmath>

#include "htc/errors.hpp"
#include "htc/matrix.hpp"
#include "htc/random.hpp"
#include "htc/svd.hpp"

using namespace htc;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, RngSeed seed) {
  Engine rng(seed);
  Matrix m(r, c);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

Matrix reconstruct(const SvdResult& svd) {
  const std::size_t m = svd.u.rows();
  const std::size_t n = svd.v.rows();
  Matrix out(m, n);
  for (std::size_t k = 0; k < svd.singular_values.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += svd.u(i, k) * svd.singular_values[k] * svd.v(j, k);
      }
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("matrix basics") {
  const Matrix id = Matrix::identity(3);
  CHECK(id(0, 0) == 1.0);
  CHECK(id(0, 1) == 0.0);
  CHECK(id.frobenius_norm() == doctest::Approx(std::sqrt(3.0)));

  Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
  const Matrix t = transpose(a);
  CHECK(t.rows() == 3);
  CHECK(t(2, 1) == 6.0);

  const auto y = matvec(a, std::vector<double>{1, 0, -1});
  CHECK(y == std::vector<double>{-2.0, -2.0});
  CHECK_THROWS_AS(matvec(a, std::vector<double>{1, 2}), DomainError);
  CHECK_THROWS_AS(matmul(a, a), DomainError);

  const Matrix g = gram(a);
  const Matrix ref = matmul(transpose(a), a);
  CHECK(max_abs_diff(g, ref) == 0.0);
}

TEST_CASE("norm_p covers quasi-norms") {
  const std::vector<double> v{1.0, -1.0};
  CHECK(norm_p(v, 1.0) == doctest::Approx(2.0));
  CHECK(norm_p(v, 2.0) == doctest::Approx(std::numbers::sqrt2));
  CHECK(norm_p(v, 0.5) == doctest::Approx(4.0));  // (1 + 1)^2
  CHECK_THROWS_AS(norm_p(v, 0.0), ParameterError);
}

TEST_CASE("jacobi SVD reconstructs and is orthogonal") {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{30, 20}, {20, 30}, {25, 25}}) {
    const Matrix a = random_matrix(r, c, {30, r * 100 + c});
    const SvdResult svd = jacobi_svd(a);
    CHECK(svd.singular_values.size() == std::min(r, c));
    // nonincreasing singular values
    for (std::size_t i = 0; i + 1 < svd.singular_values.size(); ++i) {
      CHECK(svd.singular_values[i] >= svd.singular_values[i + 1]);
    }
    CHECK(max_abs_diff(reconstruct(svd), a) < 1e-12 * a.frobenius_norm());
    // U^T U = I, V^T V = I
    const Matrix utu = gram(svd.u);
    const Matrix vtv = gram(svd.v);
    CHECK(max_abs_diff(utu, Matrix::identity(utu.rows())) < 1e-10);
    CHECK(max_abs_diff(vtv, Matrix::identity(vtv.rows())) < 1e-10);
  }
}

TEST_CASE("jacobi SVD agrees with the symmetric eigensolver") {
  const Matrix a = random_matrix(40, 30, {31, 0});
  const SvdResult svd = jacobi_svd(a);
  const auto lam = symmetric_eigenvalues(gram(a));
  REQUIRE(lam.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    const double s2 = svd.singular_values[i] * svd.singular_values[i];
    CHECK(lam[i] == doctest::Approx(s2).epsilon(1e-8));
  }
}

TEST_CASE("SVD of degenerate matrices") {
  SUBCASE("zero matrix") {
    const SvdResult svd = jacobi_svd(Matrix(4, 3));
    for (double s : svd.singular_values) CHECK(s == 0.0);
  }
  SUBCASE("rank one") {
    Matrix a(10, 8);
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 8; ++j) a(i, j) = (i + 1.0) * (j + 1.0);
    }
    const SvdResult svd = jacobi_svd(a);
    CHECK(svd.singular_values[0] > 0.0);
    for (std::size_t i = 1; i < svd.singular_values.size(); ++i) {
      CHECK(svd.singular_values[i] < 1e-10 * svd.singular_values[0]);
    }
    CHECK(max_abs_diff(reconstruct(svd), a) < 1e-12 * a.frobenius_norm());
  }
  SUBCASE("non-finite entries are rejected") {
    Matrix a(2, 2, {1.0, std::nan(""), 0.0, 1.0});
    CHECK_THROWS_AS(jacobi_svd(a), DomainError);
  }
}

TEST_CASE("symmetric eigensolver on a known 2x2") {
  Matrix s(2, 2, {2, 1, 1, 2});
  const auto lam = symmetric_eigenvalues(s);
  CHECK(lam[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(symmetric_eigenvalues(Matrix(2, 3)), DomainError);
}
