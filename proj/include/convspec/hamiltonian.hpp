#pragma once
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "convspec/fock_sector.hpp"

namespace convspec {

// ---------------------------------------------------------------- ModelSpec

// Coupling given by one of the nine catalog families.  Only k0 = k1 = 1
// models can use a catalog coupling directly; higher multiplicities go
// through the lifted form below.
struct CatalogCoupling {
  std::string family;
  std::map<std::string, double> params;
};

// Coupling given as explicit per-sector coefficient tables.
struct TableCoupling {
  struct Sector {
    long long N = 0;
    std::vector<double> a;        // length N+1
    std::vector<double> b_mag;    // length N
    std::vector<double> b_phase;  // length N
  };
  std::vector<Sector> sectors;
};

struct ModelSpec;

// Coupling obtained by lifting a k0 = k1 = 1 model to the multiplicities
// of the enclosing ModelSpec.  Every sector (r0, r1, N) of the lifted
// model reproduces the inner model's sector N coefficients.
struct LiftedCoupling {
  std::shared_ptr<const ModelSpec> inner;
};

using Coupling = std::variant<CatalogCoupling, TableCoupling, LiftedCoupling>;

struct ModelSpec {
  long long k0 = 1;
  long long k1 = 1;
  double omega0 = 0.0;  // free frequency of mode 0
  double omega1 = 0.0;  // free frequency of mode 1
  Coupling coupling = CatalogCoupling{};
};

// Throws std::invalid_argument naming the offending field.
void validate_model(const ModelSpec& model);

// ----------------------------------------------------------- JacobiOperator

// Per-sector tridiagonal data in polar form.  The represented Hermitian
// matrix has (n, n+1) entry b_n = offdiag_mag[n] * exp(i*offdiag_phase[n])
// and (n+1, n) entry conj(b_n).
struct JacobiOperator {
  std::vector<double> diag;           // a_0 .. a_N
  std::vector<double> offdiag_mag;    // |b_0| .. |b_{N-1}|, >= 0
  std::vector<double> offdiag_phase;  // phases in (-pi, pi]

  long long level() const { return static_cast<long long>(diag.size()) - 1; }
};

// Real symmetric form of a JacobiOperator plus the diagonal gauge that
// produced it: conjugating the Hermitian matrix by diag(exp(i*chi_n))
// yields the real matrix with offdiag = |b_n| and the same spectrum.
struct GaugedTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // nonnegative
  std::vector<double> chi;      // length N+1, chi[0] = 0
};

// Dense matrices of the sector operators (dimension N+1).
struct OperatorMatrices {
  Eigen::MatrixXcd a0;      // number-like diagonal, entries r0/k0 + n
  Eigen::MatrixXcd a;       // lowering shift, entry (n-1, n) = b_{n-1}
  Eigen::MatrixXcd a_star;  // adjoint of a
  Eigen::MatrixXcd h_int;   // diagonal part + a + a_star
  Eigen::MatrixXcd h_free;  // free-field diagonal
};

// Exactly represented rational argument for cal_g (values r0/k0 + n).
struct Rational {
  long long num = 0;
  long long den = 1;
};

// -------------------------------------------------------------- operations

// Squared shift coefficient as a function of the conserved charge K and the
// rational sector coordinate A0: the value |b|^2 that couples the states at
// A0 and A0+1 inside the sector selected by (A0, K).  Exactly zero at the
// sector boundaries (A0 just below the bottom and at the top).
double cal_g(const ModelSpec& model, Rational A0, long long K);

JacobiOperator jacobi_operator(const ModelSpec& model, const SectorIndex& mu);

GaugedTridiagonal gauge_real(const JacobiOperator& j);

OperatorMatrices operator_matrices(const ModelSpec& model, const SectorIndex& mu);

// Sector-size caps.  Catalog q-families are capped tighter because their
// eigenvalue range grows like q^-N and double precision runs out.  The
// environment variable CONVSPEC_MAX_N overrides both caps.
long long max_sector_level(bool q_family);

}  // namespace convspec
