#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "convspec/errors.hpp"
#include "convspec/polynomials.hpp"
#include "convspec/spectral.hpp"
#include "oracles/sturm.hpp"

using namespace convspec;

namespace {

ModelSpec krawtchouk_model(double p) {
  ModelSpec m;
  m.coupling = CatalogCoupling{"krawtchouk", {{"p", p}}};
  return m;
}

}  // namespace

TEST_CASE("spectral decomposition of tiny operators") {
  JacobiOperator one;
  one.diag = {2.5};
  SpectralData s1 = spectral_decomposition(one);
  CHECK(s1.eigenvalues.size() == 1);
  CHECK(s1.eigenvalues[0] == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s1.coeffs(0, 0) == 1.0);
  CHECK(s1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s1.gauge[0] == 0.0);

  JacobiOperator two;
  two.diag = {0.0, 0.0};
  two.offdiag_mag = {1.0};
  two.offdiag_phase = {0.0};
  SpectralData s2 = spectral_decomposition(two);
  CHECK(s2.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s2.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s2.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s2.coeffs(0, 0) == 1.0);
  CHECK(s2.coeffs(1, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s2.coeffs(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trivial sector decomposes to its diagonal entry") {
  SpectralData s = spectral_decomposition(krawtchouk_model(0.3), {0, 0, 0, 1, 1});
  CHECK(s.eigenvalues.size() == 1);
  CHECK(s.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("binomial-coupling spectrum is the integer ladder") {
  SpectralData s = spectral_decomposition(krawtchouk_model(0.3), {0, 0, 5, 1, 1});
  for (long long l = 0; l <= 5; ++l)
    CHECK(std::abs(s.eigenvalues[l] - static_cast<double>(l)) <= 1e-12);

  ModelSpec dh;
  dh.coupling = CatalogCoupling{"dual_hahn", {{"gamma", 0.0}, {"delta", 0.0}}};
  SpectralData sd = spectral_decomposition(dh, {0, 0, 1, 1, 1});
  CHECK(std::abs(sd.eigenvalues[0] - 0.0) <= 1e-13);
  CHECK(std::abs(sd.eigenvalues[1] - 2.0) <= 1e-13);
}

TEST_CASE("eigenvalues agree with a bisection oracle") {
  // asymmetric hand-built operator with growing scales
  std::vector<double> diag, off;
  for (int n = 0; n <= 20; ++n) diag.push_back(0.37 * n * n - 1.4 * n + 0.9);
  for (int n = 0; n < 20; ++n) off.push_back(0.8 + 0.31 * n);

  Eigen::VectorXd ev = eigenvalues_tridiagonal(diag, off);
  std::vector<double> ov = oracle::sturm_eigenvalues(diag, off);
  REQUIRE(static_cast<std::size_t>(ev.size()) == ov.size());
  double scale = std::max(std::abs(ov.front()), std::abs(ov.back()));
  for (long i = 0; i < ev.size(); ++i)
    CHECK(std::abs(ev[i] - ov[static_cast<std::size_t>(i)]) <= 1e-13 * scale);
}

TEST_CASE("tridiagonal eigenvalue input validation") {
  CHECK_THROWS_AS(eigenvalues_tridiagonal({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues_tridiagonal({1.0, 2.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues_tridiagonal({1.0}, {0.5}), std::invalid_argument);
}

TEST_CASE("near-degenerate spectra are refused") {
  JacobiOperator j;
  j.diag = {1.0, 1.0};
  j.offdiag_mag = {1e-16};
  j.offdiag_phase = {0.0};
  CHECK_THROWS_WITH_AS(spectral_decomposition(j), doctest::Contains("collide"),
                       numerical_error);
}

TEST_CASE("polynomial matrix is orthonormal under the spectral weights") {
  std::vector<std::pair<ModelSpec, long long>> cases;
  cases.push_back({krawtchouk_model(0.3), 9});
  ModelSpec qk;
  qk.coupling = CatalogCoupling{"q_krawtchouk", {{"q", 0.5}, {"p", 0.6}}};
  cases.push_back({qk, 8});
  ModelSpec ch;
  ch.coupling = CatalogCoupling{"chebyshev", {}};
  cases.push_back({ch, 12});

  for (const auto& [m, N] : cases) {
    SpectralData s = spectral_decomposition(m, {0, 0, N, 1, 1});
    CHECK(verify_orthonormality(s) <= 1e-12);
    CHECK(std::abs(s.weights.sum() - 1.0) <= 1e-12);
    for (long long l = 0; l <= N; ++l) CHECK(s.coeffs(0, l) == 1.0);
  }
}

TEST_CASE("orthonormality check flags corrupted data") {
  SpectralData s = spectral_decomposition(krawtchouk_model(0.4), {0, 0, 6, 1, 1});
  REQUIRE(verify_orthonormality(s) <= 1e-12);
  s.weights[2] *= 1.01;
  CHECK(verify_orthonormality(s) > 1e-4);
}

TEST_CASE("decomposition reconstructs the operator") {
  JacobiOperator j;
  j.diag = {0.3, -0.2, 0.9, 0.1, -0.6};
  j.offdiag_mag = {1.1, 0.4, 2.3, 0.7};
  j.offdiag_phase = {0.5, -2.1, 1.3, 0.9};

  SpectralData s = spectral_decomposition(j);
  long dim = s.eigenvalues.size();
  Eigen::MatrixXd V = s.coeffs;
  for (long l = 0; l < dim; ++l) V.col(l) *= std::sqrt(s.weights[l]);
  Eigen::MatrixXd T = V * s.eigenvalues.asDiagonal() * V.transpose();

  for (long n = 0; n < dim; ++n) {
    CHECK(std::abs(T(n, n) - j.diag[static_cast<std::size_t>(n)]) <= 1e-12);
    if (n + 1 < dim)
      CHECK(std::abs(T(n, n + 1) - j.offdiag_mag[static_cast<std::size_t>(n)]) <= 1e-12);
  }
  for (long r = 0; r < dim; ++r)
    for (long c = r + 2; c < dim; ++c) CHECK(std::abs(T(r, c)) <= 1e-12);

  // the recorded gauge is the cumulative off-diagonal phase
  CHECK(s.gauge[0] == 0.0);
  CHECK(s.gauge[2] == doctest::Approx(0.5 - 2.1).epsilon(1e-15));
}

TEST_CASE("columns solve the three-term eigenvalue equation") {
  ModelSpec hahn;
  hahn.coupling = CatalogCoupling{"hahn", {{"alpha", 1.5}, {"beta", 0.5}}};
  SectorIndex mu{0, 0, 10, 1, 1};
  JacobiOperator j = jacobi_operator(hahn, mu);
  SpectralData s = spectral_decomposition(hahn, mu);

  for (long long l = 0; l <= 10; ++l) {
    Eigen::VectorXd P = recurrence_eval(j, s.eigenvalues[l]);
    for (long long n = 0; n <= 10; ++n)
      CHECK(std::abs(P[n] - s.coeffs(n, l)) <= 1e-12 * std::max(1.0, std::abs(P[n])));
  }
}
