#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "convspec/families.hpp"

using namespace convspec;

namespace {

// tridiagonal operator of a family's sector N, for recurrence cross-checks
JacobiOperator operator_from(const FamilyDescriptor& f, long long N) {
  JacobiOperator j;
  for (long long n = 0; n <= N; ++n) j.diag.push_back(f.jacobi_map(n, N).a);
  for (long long n = 0; n < N; ++n) {
    j.offdiag_mag.push_back(std::sqrt(f.jacobi_map(n, N).b2));
    j.offdiag_phase.push_back(0.0);
  }
  return j;
}

std::vector<FamilyDescriptor> representative_families() {
  return {
      make_family("krawtchouk", {{"p", 0.3}}),
      make_family("dual_hahn", {{"gamma", 1.0}, {"delta", 0.5}}),
      make_family("chebyshev", {}),
      make_family("hahn", {{"alpha", 1.5}, {"beta", 0.5}}),
      make_family("dual_q_hahn", {{"q", 0.5}, {"gamma", 0.8}, {"delta", 0.5}}),
      make_family("affine_q_krawtchouk", {{"q", 0.5}, {"p", 0.4}}),
      make_family("q_krawtchouk", {{"q", 0.5}, {"p", 0.6}}),
      make_family("q_hahn", {{"q", 0.5}, {"alpha", 0.8}, {"beta", 0.6}}),
      make_family("dual_q_krawtchouk", {{"q", 0.5}, {"c", -1.0}}),
  };
}

}  // namespace

TEST_CASE("catalog enumeration and naming") {
  CHECK(all_families().size() == 9);
  for (Family f : all_families()) CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS_AS(family_from_name("legendre"), std::invalid_argument);

  CHECK(family_param_names(Family::krawtchouk) == std::vector<std::string>{"p"});
  CHECK(family_param_names(Family::chebyshev).empty());
  CHECK(family_param_names(Family::q_hahn) ==
        std::vector<std::string>({"q", "alpha", "beta"}));
  CHECK(family_param_names(Family::dual_q_krawtchouk) ==
        std::vector<std::string>({"q", "c"}));

  CHECK_FALSE(family_is_q(Family::hahn));
  CHECK(family_is_q(Family::dual_q_hahn));
}

TEST_CASE("closed-form spectra at worked points") {
  FamilyDescriptor kr = make_family("krawtchouk", {{"p", 0.5}});
  CHECK(family_spectrum(kr, 3, 5) == 3.0);

  FamilyDescriptor dh = make_family("dual_hahn", {{"gamma", 0.0}, {"delta", 0.0}});
  CHECK(family_spectrum(dh, 2, 5) == 6.0);  // l(l + gamma + delta + 1)

  FamilyDescriptor dqk = make_family("dual_q_krawtchouk", {{"q", 0.5}, {"c", -1.0}});
  CHECK(family_spectrum(dqk, 2, 2) == 3.0);  // q^-l + c q^(l-N) = 4 - 1
}

TEST_CASE("spectra are strictly increasing in l") {
  for (const FamilyDescriptor& f : representative_families()) {
    for (long long N : {1LL, 4LL, 9LL})
      for (long long l = 0; l < N; ++l)
        CHECK(family_spectrum(f, l + 1, N) > family_spectrum(f, l, N));
  }
}

TEST_CASE("raw weights match the catalog normalization") {
  FamilyDescriptor kr = make_family("krawtchouk", {{"p", 0.5}});
  CHECK(family_weight(kr, 1, 2) == doctest::Approx(0.5).epsilon(1e-15));

  FamilyDescriptor ch = make_family("chebyshev", {});
  for (long long l = 0; l <= 4; ++l) CHECK(family_weight(ch, l, 4) == 1.0);
}

TEST_CASE("normalized weights sum to one") {
  for (const FamilyDescriptor& f : representative_families())
    for (long long N : {0LL, 1LL, 5LL, 9LL}) {
      double s = 0.0;
      for (long long l = 0; l <= N; ++l) s += family_weight_normalized(f, l, N);
      CHECK(std::abs(s - 1.0) <= 1e-10);
    }
}

TEST_CASE("degree zero polynomial is one everywhere") {
  for (const FamilyDescriptor& f : representative_families())
    for (long long N : {1LL, 6LL})
      for (long long l = 0; l <= N; ++l)
        CHECK(family_polynomial(f, 0, l, N) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("degree one polynomial in closed form") {
  // |P_1(E_l)| = |Np - l| / sqrt(Np(1-p)) for the binomial family
  double p = 0.3;
  long long N = 6;
  FamilyDescriptor kr = make_family("krawtchouk", {{"p", p}});
  for (long long l = 0; l <= N; ++l) {
    double expect = std::abs(N * p - l) / std::sqrt(N * p * (1.0 - p));
    CHECK(std::abs(family_polynomial(kr, 1, l, N)) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("closed-form values match the recurrence at spot points") {
  {
    FamilyDescriptor ch = make_family("chebyshev", {});
    JacobiOperator j = operator_from(ch, 3);
    Eigen::VectorXd P = recurrence_eval(j, family_spectrum(ch, 1, 3));
    CHECK(std::abs(family_polynomial(ch, 2, 1, 3)) ==
          doctest::Approx(std::abs(P[2])).epsilon(1e-12));
  }
  {
    FamilyDescriptor dqk = make_family("dual_q_krawtchouk", {{"q", 0.5}, {"c", -1.0}});
    JacobiOperator j = operator_from(dqk, 2);
    Eigen::VectorXd P = recurrence_eval(j, family_spectrum(dqk, 1, 2));
    CHECK(std::abs(family_polynomial(dqk, 1, 1, 2)) ==
          doctest::Approx(std::abs(P[1])).epsilon(1e-12));
  }
}

TEST_CASE("coefficient formulas vanish exactly at the sector boundary") {
  for (const FamilyDescriptor& f : representative_families()) {
    for (long long N : {1LL, 5LL, 8LL}) {
      CHECK(f.jacobi_map(-1, N).b2 == 0.0);
      CHECK(f.jacobi_map(N, N).b2 == 0.0);
      for (long long n = 0; n < N; ++n) CHECK(f.jacobi_map(n, N).b2 > 0.0);
    }
  }
}

TEST_CASE("symmetric parameter limit collapses onto the flat-weight family") {
  FamilyDescriptor hahn = make_family("hahn", {{"alpha", 0.0}, {"beta", 0.0}});
  FamilyDescriptor ch = make_family("chebyshev", {});
  for (long long N : {1LL, 4LL, 8LL, 12LL}) {
    for (long long l = 0; l <= N; ++l) {
      CHECK(family_spectrum(hahn, l, N) == family_spectrum(ch, l, N));
      double wh = family_weight_normalized(hahn, l, N);
      double wc = family_weight_normalized(ch, l, N);
      CHECK(std::abs(wh - wc) <= 1e-10 * std::max(1.0, std::abs(wc)));
      for (long long n = 0; n <= N; ++n) {
        double a = std::abs(family_polynomial(hahn, n, l, N));
        double b = std::abs(family_polynomial(ch, n, l, N));
        CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, a, b}));
      }
    }
  }
}

TEST_CASE("parameter validation names the offending parameter") {
  CHECK_THROWS_WITH_AS(make_family("krawtchouk", {}),
                       doctest::Contains("'p'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("krawtchouk", {{"p", 1.5}}),
                       doctest::Contains("0 < p < 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("krawtchouk", {{"p", 0.5}, {"x", 1.0}}),
                       doctest::Contains("'x'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("chebyshev", {{"p", 0.5}}),
                       doctest::Contains("'p'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("dual_hahn", {{"gamma", -1.5}, {"delta", 0.0}}),
                       doctest::Contains("gamma"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("q_hahn", {{"q", 0.5}, {"alpha", 2.5}, {"beta", 0.5}}),
                       doctest::Contains("alpha"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      make_family("dual_q_krawtchouk", {{"q", 0.5}, {"c", 0.5}}),
      doctest::Contains("c"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_family("dual_q_hahn",
                                   {{"q", 1.2}, {"gamma", 0.5}, {"delta", 0.5}}),
                       doctest::Contains("q"), std::invalid_argument);
  CHECK_THROWS_AS(make_family("affine_q_krawtchouk", {{"q", 0.5}, {"p", 2.5}}),
                  std::invalid_argument);
}

TEST_CASE("accessor range checks") {
  FamilyDescriptor kr = make_family("krawtchouk", {{"p", 0.5}});
  CHECK_THROWS_AS(family_spectrum(kr, -1, 5), std::invalid_argument);
  CHECK_THROWS_AS(family_spectrum(kr, 6, 5), std::invalid_argument);
  CHECK_THROWS_AS(family_weight(kr, 0, -1), std::invalid_argument);
  CHECK_THROWS_AS(family_polynomial(kr, 7, 0, 6), std::invalid_argument);
  CHECK_THROWS_AS(family_spectrum(kr, 0, 101), std::invalid_argument);

  FamilyDescriptor dqk = make_family("dual_q_krawtchouk", {{"q", 0.5}, {"c", -1.0}});
  CHECK_THROWS_AS(family_spectrum(dqk, 0, 31), std::invalid_argument);
  // at the q cap the closed form still evaluates: q^-l + c q^(l-N) spans
  // +-(2^30 - 1) for q = 1/2, c = -1
  CHECK(family_spectrum(dqk, 0, 30) ==
        doctest::Approx(1.0 - std::ldexp(1.0, 30)).epsilon(1e-14));
  CHECK(family_spectrum(dqk, 30, 30) ==
        doctest::Approx(std::ldexp(1.0, 30) - 1.0).epsilon(1e-14));
}
