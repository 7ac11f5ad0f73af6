#include "convspec/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

#include "convspec/errors.hpp"
#include "convspec/families.hpp"

namespace convspec {

namespace {

bool coupling_is_q(const ModelSpec& model) {
  if (const auto* cat = std::get_if<CatalogCoupling>(&model.coupling))
    return family_is_q(family_from_name(cat->family));
  if (const auto* lift = std::get_if<LiftedCoupling>(&model.coupling))
    return lift->inner ? coupling_is_q(*lift->inner) : false;
  return false;
}

void check_sector_against_model(const ModelSpec& model, const SectorIndex& mu) {
  if (mu.k0 != model.k0 || mu.k1 != model.k1)
    throw std::invalid_argument("sector multiplicities (" + std::to_string(mu.k0) + ", " +
                                std::to_string(mu.k1) + ") do not match the model (" +
                                std::to_string(model.k0) + ", " + std::to_string(model.k1) +
                                ")");
  if (mu.N < 0) throw std::invalid_argument("sector level N must be nonnegative");
  if (mu.r0 < 0 || mu.r0 >= mu.k0 || mu.r1 < 0 || mu.r1 >= mu.k1)
    throw std::invalid_argument("sector remainders (r0=" + std::to_string(mu.r0) +
                                ", r1=" + std::to_string(mu.r1) +
                                ") must satisfy 0 <= r < k");
  long long cap = max_sector_level(coupling_is_q(model));
  if (mu.N > cap)
    throw std::invalid_argument("sector level N=" + std::to_string(mu.N) +
                                " exceeds the cap " + std::to_string(cap) +
                                " (set CONVSPEC_MAX_N to raise it)");
}

const TableCoupling::Sector& find_table_sector(const TableCoupling& tab, long long N) {
  for (const auto& s : tab.sectors)
    if (s.N == N) return s;
  throw std::invalid_argument("coupling table has no entry for sector level N=" +
                              std::to_string(N));
}

}  // namespace

long long max_sector_level(bool q_family) {
  if (const char* env = std::getenv("CONVSPEC_MAX_N")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
      throw std::invalid_argument(std::string("CONVSPEC_MAX_N is set to '") + env +
                                  "', expected a positive integer");
    return v;
  }
  return q_family ? 30 : 100;
}

void validate_model(const ModelSpec& model) {
  if (model.k0 < 1 || model.k1 < 1)
    throw std::invalid_argument("conversion multiplicities must satisfy k0 >= 1 and k1 >= 1 "
                                "(got k0=" + std::to_string(model.k0) +
                                ", k1=" + std::to_string(model.k1) + ")");
  if (!std::isfinite(model.omega0) || !std::isfinite(model.omega1))
    throw std::invalid_argument("mode frequencies must be finite");

  if (const auto* cat = std::get_if<CatalogCoupling>(&model.coupling)) {
    make_family(cat->family, cat->params);  // validates name and parameter domains
  } else if (const auto* tab = std::get_if<TableCoupling>(&model.coupling)) {
    if (tab->sectors.empty())
      throw std::invalid_argument("coupling table must list at least one sector");
    std::set<long long> seen;
    for (const auto& s : tab->sectors) {
      if (s.N < 0)
        throw std::invalid_argument("coupling table sector level N=" + std::to_string(s.N) +
                                    " must be nonnegative");
      if (!seen.insert(s.N).second)
        throw std::invalid_argument("coupling table lists sector level N=" +
                                    std::to_string(s.N) + " twice");
      if (static_cast<long long>(s.a.size()) != s.N + 1)
        throw std::invalid_argument("coupling table sector N=" + std::to_string(s.N) +
                                    " needs " + std::to_string(s.N + 1) +
                                    " diagonal entries, got " + std::to_string(s.a.size()));
      if (static_cast<long long>(s.b_mag.size()) != s.N ||
          static_cast<long long>(s.b_phase.size()) != s.N)
        throw std::invalid_argument("coupling table sector N=" + std::to_string(s.N) +
                                    " needs " + std::to_string(s.N) +
                                    " off-diagonal magnitudes and phases");
      for (double v : s.a)
        if (!std::isfinite(v))
          throw std::invalid_argument("coupling table sector N=" + std::to_string(s.N) +
                                      " has a non-finite diagonal entry");
      for (double v : s.b_mag)
        if (!std::isfinite(v) || v < 0.0)
          throw std::invalid_argument("coupling table sector N=" + std::to_string(s.N) +
                                      " off-diagonal magnitudes must be finite and "
                                      "nonnegative");
      for (double v : s.b_phase)
        if (!std::isfinite(v))
          throw std::invalid_argument("coupling table sector N=" + std::to_string(s.N) +
                                      " has a non-finite off-diagonal phase");
    }
  } else if (const auto* lift = std::get_if<LiftedCoupling>(&model.coupling)) {
    if (!lift->inner) throw std::invalid_argument("lifted coupling has no inner model");
    if (lift->inner->k0 != 1 || lift->inner->k1 != 1)
      throw std::invalid_argument("lifted coupling requires an inner model with "
                                  "k0 = k1 = 1 (got k0=" + std::to_string(lift->inner->k0) +
                                  ", k1=" + std::to_string(lift->inner->k1) + ")");
    if (std::holds_alternative<LiftedCoupling>(lift->inner->coupling))
      throw std::invalid_argument("lifted couplings cannot be nested");
    validate_model(*lift->inner);
  }
}

double cal_g(const ModelSpec& model, Rational A0, long long K) {
  validate_model(model);
  if (A0.den <= 0)
    throw std::invalid_argument("intensity argument denominator must be positive (got " +
                                std::to_string(A0.den) + ")");
  if (A0.den != model.k0)
    throw std::invalid_argument("intensity argument denominator " + std::to_string(A0.den) +
                                " must equal the model multiplicity k0=" +
                                std::to_string(model.k0));
  if (std::holds_alternative<TableCoupling>(model.coupling))
    throw std::invalid_argument("table-defined couplings carry no closed-form intensity "
                                "function");

  const ModelSpec* inner = &model;
  if (const auto* lift = std::get_if<LiftedCoupling>(&model.coupling)) inner = lift->inner.get();
  const auto* cat = std::get_if<CatalogCoupling>(&inner->coupling);
  if (!cat)
    throw std::invalid_argument("intensity function requires a catalog coupling");
  if (inner == &model && (model.k0 != 1 || model.k1 != 1))
    throw std::invalid_argument("catalog couplings act on single-quantum conversion "
                                "(k0 = k1 = 1); wrap the model in a lifted coupling for "
                                "k0=" + std::to_string(model.k0) +
                                ", k1=" + std::to_string(model.k1));

  // occupation numbers at the evaluation point: n0 = k0*A0, n1 = (K - k1*n0)/k0
  long long n0 = A0.num;
  long long rem = K - model.k1 * n0;
  if (rem % model.k0 != 0)
    throw std::invalid_argument("charge K=" + std::to_string(K) +
                                " is incompatible with the intensity argument");
  long long n1 = rem / model.k0;

  // floor division so the n = -1 boundary decodes to the same sector
  long long n = n0 >= 0 ? n0 / model.k0 : -(((-n0) + model.k0 - 1) / model.k0);
  long long r0 = n0 - model.k0 * n;
  long long r1 = ((n1 % model.k1) + model.k1) % model.k1;
  if ((n1 - r1) % model.k1 != 0)
    throw std::invalid_argument("charge decode failed");
  long long N = n + (n1 - r1) / model.k1;
  if (N < 0)
    throw std::invalid_argument("intensity argument and charge decode to a negative "
                                "sector level N=" + std::to_string(N));
  (void)r0;

  FamilyDescriptor fam = make_family(cat->family, cat->params);
  long long cap = max_sector_level(family_is_q(fam.name));
  if (N > cap)
    throw std::invalid_argument("sector level N=" + std::to_string(N) + " exceeds the cap " +
                                std::to_string(cap) + " (set CONVSPEC_MAX_N to raise it)");
  return fam.jacobi_map(n, N).b2;
}

JacobiOperator jacobi_operator(const ModelSpec& model, const SectorIndex& mu) {
  validate_model(model);
  check_sector_against_model(model, mu);

  JacobiOperator j;
  long long N = mu.N;
  j.diag.resize(N + 1);
  j.offdiag_mag.resize(N);
  j.offdiag_phase.assign(N, 0.0);

  if (const auto* cat = std::get_if<CatalogCoupling>(&model.coupling)) {
    if (model.k0 != 1 || model.k1 != 1)
      throw std::invalid_argument("catalog couplings act on single-quantum conversion "
                                  "(k0 = k1 = 1); wrap the model in a lifted coupling for "
                                  "k0=" + std::to_string(model.k0) +
                                  ", k1=" + std::to_string(model.k1));
    FamilyDescriptor fam = make_family(cat->family, cat->params);
    for (long long n = 0; n <= N; ++n) j.diag[n] = fam.jacobi_map(n, N).a;
    for (long long n = 0; n < N; ++n) {
      double b2 = fam.jacobi_map(n, N).b2;
      if (!(b2 > 0.0))
        throw numerical_error("coupling vanishes inside the sector at n=" +
                              std::to_string(n) + " (b^2=" + std::to_string(b2) +
                              "); the sector decouples");
      j.offdiag_mag[n] = std::sqrt(b2);
    }
    return j;
  }

  if (const auto* tab = std::get_if<TableCoupling>(&model.coupling)) {
    const auto& s = find_table_sector(*tab, N);
    j.diag = s.a;
    j.offdiag_mag = s.b_mag;
    j.offdiag_phase = s.b_phase;
    for (long long n = 0; n < N; ++n)
      if (j.offdiag_mag[n] == 0.0)
        throw numerical_error("coupling vanishes inside the sector at n=" +
                              std::to_string(n) + "; the sector decouples");
    return j;
  }

  const auto& lift = std::get<LiftedCoupling>(model.coupling);
  // the multi-quantum ladder dressed by its normalizing weight reproduces the
  // inner single-quantum couplings sector by sector, so the operator on the
  // lifted sector (r0, r1, N) is the inner operator at level N
  SectorIndex inner_mu{0, 0, N, 1, 1};
  return jacobi_operator(*lift.inner, inner_mu);
}

GaugedTridiagonal gauge_real(const JacobiOperator& j) {
  if (j.offdiag_mag.size() != j.offdiag_phase.size() ||
      j.diag.size() != j.offdiag_mag.size() + 1)
    throw std::invalid_argument("inconsistent tridiagonal data: " +
                                std::to_string(j.diag.size()) + " diagonal and " +
                                std::to_string(j.offdiag_mag.size()) + " off-diagonal entries");
  GaugedTridiagonal g;
  g.diag = j.diag;
  g.offdiag = j.offdiag_mag;
  g.chi.resize(j.diag.size());
  g.chi[0] = 0.0;
  for (std::size_t n = 0; n + 1 < g.chi.size(); ++n) g.chi[n + 1] = g.chi[n] + j.offdiag_phase[n];
  return g;
}

OperatorMatrices operator_matrices(const ModelSpec& model, const SectorIndex& mu) {
  JacobiOperator j = jacobi_operator(model, mu);
  long long N = mu.N;
  long long dim = N + 1;
  OperatorMatrices m;
  m.a0 = Eigen::MatrixXcd::Zero(dim, dim);
  m.a = Eigen::MatrixXcd::Zero(dim, dim);
  m.a_star = Eigen::MatrixXcd::Zero(dim, dim);
  m.h_int = Eigen::MatrixXcd::Zero(dim, dim);
  m.h_free = Eigen::MatrixXcd::Zero(dim, dim);

  double a0_offset = static_cast<double>(mu.r0) / static_cast<double>(mu.k0);
  double w0 = model.omega0;
  double w1 = model.omega1;
  for (long long n = 0; n <= N; ++n) {
    m.a0(n, n) = a0_offset + static_cast<double>(n);
    m.h_int(n, n) = j.diag[n];
    m.h_free(n, n) = w0 * static_cast<double>(mu.r0 + mu.k0 * n) +
                     w1 * static_cast<double>(mu.r1 + mu.k1 * (N - n));
  }
  for (long long n = 0; n < N; ++n) {
    std::complex<double> b =
        std::polar(j.offdiag_mag[n], j.offdiag_phase[n]);
    m.a(n, n + 1) = b;          // lowers the converted quantum count by one
    m.a_star(n + 1, n) = std::conj(b);
    m.h_int(n, n + 1) = b;
    m.h_int(n + 1, n) = std::conj(b);
  }
  return m;
}

}  // namespace convspec
