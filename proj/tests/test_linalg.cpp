#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "lgqk/linalg.hpp"
#include "lgqk/rng.hpp"
#include "oracles.hpp"

using namespace lgqk;

namespace {

RealSymMatrix random_psd(int n, int rank, Rng& rng, double shift = 0.0) {
  RealMatrix g(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.normal();
  RealSymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = (i == j) ? shift : 0.0;
      for (int k = 0; k < rank; ++k) acc += g(i, k) * g(j, k);
      a.set(i, j, acc);
    }
  return a;
}

std::vector<double> random_vector(int n, Rng& rng) {
  std::vector<double> y(n);
  for (double& v : y) v = rng.normal();
  return y;
}

}  // namespace

TEST_CASE("eigh_desc on simple matrices") {
  SECTION("diagonal matrix") {
    const auto eig = eigh_desc(RealSymMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0}));
    REQUIRE(eig.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
  }
  SECTION("2x2 by hand") {
    // char. polynomial of [[2,1],[1,2]]: (2-l)^2 - 1 = 0 -> l = 3, 1
    auto a = RealSymMatrix::from_row_major(2, {2.0, 1.0, 1.0, 2.0});
    const auto eig = eigh_desc(a);
    CHECK(eig.eigenvalues[0] == Approx(3.0).margin(1e-12));
    CHECK(eig.eigenvalues[1] == Approx(1.0).margin(1e-12));
    // eigenvector of 3 is (1,1)/sqrt(2) up to sign
    const auto v0 = eig.eigenvector(0);
    CHECK(std::abs(v0[0]) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    CHECK(v0[0] == Approx(v0[1]).margin(1e-12));
  }
  SECTION("identity") {
    const auto eig = eigh_desc(RealSymMatrix::identity(4));
    for (double l : eig.eigenvalues) CHECK(l == Approx(1.0).margin(1e-14));
  }
}

TEST_CASE("eigh_desc matches the cyclic Jacobi oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    RealSymMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
    const auto eig = eigh_desc(a);
    const auto ref = oracles::jacobi_eigh_desc(a);
    for (int j = 0; j < n; ++j) CHECK(eig.eigenvalues[j] == Approx(ref.values[j]).margin(1e-10));
  }
}

TEST_CASE("eigh_desc invariants: residual, orthonormality, trace") {
  Rng rng(77);
  for (int n : {3, 10, 40}) {
    RealSymMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a.set(i, j, rng.uniform(-2.0, 2.0));
    const auto eig = eigh_desc(a);
    const double scale = 1e-8 * (std::abs(eig.eigenvalues[0]) + 1.0);

    double eig_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      eig_sum += eig.eigenvalues[j];
      const auto v = eig.eigenvector(j);
      const auto av = a.matvec(v);
      for (int i = 0; i < n; ++i) CHECK(std::abs(av[i] - eig.eigenvalues[j] * v[i]) <= scale);
      for (int k = 0; k <= j; ++k)
        CHECK(std::abs(dot(v, eig.eigenvector(k)) - (j == k ? 1.0 : 0.0)) <= 1e-10);
    }
    CHECK(eig_sum == Approx(a.trace()).margin(1e-8 * (std::abs(a.trace()) + 1.0)));

    // reconstruction V diag(l) V^T
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double r = 0.0;
        for (int k = 0; k < n; ++k) r += eig.eigenvalues[k] * eig.eigenvector(k)[i] * eig.eigenvector(k)[j];
        CHECK(std::abs(r - a(i, j)) <= scale);
      }
  }
}

TEST_CASE("RealSymMatrix rejects asymmetric input") {
  CHECK_THROWS_AS(RealSymMatrix::from_row_major(2, {1.0, 0.5, 0.5 + 1e-9, 1.0}), symmetry_error);
  CHECK_NOTHROW(RealSymMatrix::from_row_major(2, {1.0, 0.5, 0.5 + 1e-13, 1.0}));
  CHECK_THROWS_AS(RealSymMatrix::from_row_major(2, {1.0, 0.5}), dimension_error);
}

TEST_CASE("pinv_apply on simple matrices") {
  SECTION("rank-1 projector") {
    auto a = RealSymMatrix::from_row_major(2, {1.0, 0.0, 0.0, 0.0});
    const auto x = pinv_apply(a, std::vector<double>{2.0, 3.0});
    CHECK(x[0] == Approx(2.0).margin(1e-12));
    CHECK(x[1] == Approx(0.0).margin(1e-12));
  }
  SECTION("scalar inverse") {
    RealSymMatrix a = RealSymMatrix::diagonal(std::vector<double>{2.0, 2.0, 2.0});
    const auto x = pinv_apply(a, std::vector<double>{2.0, 4.0, 6.0});
    CHECK(x[0] == Approx(1.0).margin(1e-14));
    CHECK(x[1] == Approx(2.0).margin(1e-14));
    CHECK(x[2] == Approx(3.0).margin(1e-14));
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(pinv_apply(RealSymMatrix::identity(3), std::vector<double>{1.0}), dimension_error);
  }
}

TEST_CASE("pinv_apply matches the SVD oracle") {
  Rng rng(202);
  for (int trial = 0; trial < 8; ++trial) {
    const RealSymMatrix a = random_psd(3, 3, rng);
    const auto y = random_vector(3, rng);
    const auto x = pinv_apply(a, y);
    const auto ref = oracles::svd_pinv_apply(a, y);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == Approx(ref[i]).margin(1e-10));
  }
}

TEST_CASE("pinv_apply returns the range projection of y") {
  Rng rng(303);
  for (int trial = 0; trial < 5; ++trial) {
    const RealSymMatrix a = random_psd(5, 2, rng);  // rank deficient
    const auto y = random_vector(5, rng);
    const auto x = pinv_apply(a, y);
    const auto ax = a.matvec(x);

    // projection of y onto range(A) through the independent oracle
    const auto ref = oracles::jacobi_eigh_desc(a);
    const double cutoff = kPinvRcond * std::abs(ref.values[0]);
    std::vector<double> proj(5, 0.0);
    for (int j = 0; j < 5; ++j) {
      if (std::abs(ref.values[j]) <= cutoff) continue;
      const double c = dot(ref.vectors[j], y);
      for (int i = 0; i < 5; ++i) proj[i] += c * ref.vectors[j][i];
    }
    for (int i = 0; i < 5; ++i) CHECK(ax[i] == Approx(proj[i]).margin(1e-8));
  }
}

TEST_CASE("solve_shifted on simple systems") {
  SECTION("identity plus unit shift") {
    const auto x = solve_shifted(RealSymMatrix::identity(2), 1.0, std::vector<double>{2.0, 2.0});
    CHECK(x[0] == Approx(1.0).margin(1e-14));
    CHECK(x[1] == Approx(1.0).margin(1e-14));
  }
  SECTION("zero matrix, positive shift") {
    const auto x = solve_shifted(RealSymMatrix(2), 0.5, std::vector<double>{1.0, 1.0});
    CHECK(x[0] == Approx(2.0).margin(1e-14));
    CHECK(x[1] == Approx(2.0).margin(1e-14));
  }
  SECTION("singular at zero shift") {
    CHECK_THROWS_AS(solve_shifted(RealSymMatrix(2), 0.0, std::vector<double>{1.0, 1.0}), singular_error);
  }
  SECTION("negative shift rejected") {
    CHECK_THROWS_AS(solve_shifted(RealSymMatrix::identity(2), -0.1, std::vector<double>{1.0, 1.0}), value_error);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(solve_shifted(RealSymMatrix::identity(3), 1.0, std::vector<double>{1.0}), dimension_error);
  }
}

TEST_CASE("solve_shifted matches the spectral oracle") {
  Rng rng(404);
  const RealSymMatrix a = random_psd(4, 4, rng);
  const auto y = random_vector(4, rng);
  const double rho = 0.07;
  const auto x = solve_shifted(a, rho, y);

  const auto ref = oracles::jacobi_eigh_desc(a);
  std::vector<double> expect(4, 0.0);
  for (int j = 0; j < 4; ++j) {
    const double c = dot(ref.vectors[j], y) / (ref.values[j] + rho);
    for (int i = 0; i < 4; ++i) expect[i] += c * ref.vectors[j][i];
  }
  for (int i = 0; i < 4; ++i) CHECK(x[i] == Approx(expect[i]).margin(1e-10));
}

TEST_CASE("solve_shifted converges to pinv_apply as the shift vanishes") {
  Rng rng(505);
  const RealSymMatrix a = random_psd(5, 5, rng, 0.5);  // comfortably full rank
  const auto y = random_vector(5, rng);
  const auto base = pinv_apply(a, y);

  double prev = std::numeric_limits<double>::infinity();
  for (double rho : {1e-2, 1e-6, 1e-10}) {
    const auto x = solve_shifted(a, rho, y);
    double err = 0.0;
    for (int i = 0; i < 5; ++i) err = std::max(err, std::abs(x[i] - base[i]));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-8);
}
