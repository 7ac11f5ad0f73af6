#include "convspec/families.hpp"

#include <cmath>
#include <stdexcept>

#include "convspec/errors.hpp"

namespace convspec {

namespace {

using detail::qd;

double qp(double q, long long e) { return std::pow(q, static_cast<double>(e)); }

qd qdp(double q, long long e) { return detail::pow_int(qd(q), e); }

double binomial(long long N, long long k) {
  if (k < 0 || k > N) return 0.0;
  double r = 1.0;
  for (long long j = 1; j <= k; ++j) r *= static_cast<double>(N - k + j) / static_cast<double>(j);
  return r;
}

// The closed-form normalization prefactors sit under a square root; their
// positivity is a structural claim about the catalog formulas, so it is
// checked on every evaluation instead of being assumed.
double prefactor_sqrt(double r2, const char* family) {
  if (!std::isfinite(r2))
    throw numerical_error(std::string(family) +
                          ": polynomial normalization prefactor overflowed; reduce N");
  if (!(r2 > 0.0))
    throw numerical_error(std::string(family) +
                          ": polynomial normalization prefactor is not positive (" +
                          std::to_string(r2) + ")");
  return std::sqrt(r2);
}

// Prefactor times series, with an honesty check: the series is summed in
// extended precision, but a few extreme (n, l) corners (small q, N near the
// cap) cancel a hundred orders of magnitude and the true value sits below
// any fixed working precision.  Rather than return noise scaled up by the
// prefactor, error out; callers comparing against the recurrence skip the
// point.
double checked_value(double pref, double s, double peak, long long m,
                     const char* family) {
  double val = pref * s;
  if (pref * detail::series_noise_floor(peak, m) > 1e-10 * std::max(1.0, std::abs(val)))
    throw numerical_error(std::string(family) +
                          ": closed-form series cancellation exceeds the working "
                          "precision at this (n, l); value below the noise floor");
  return val;
}

double series_F(double r2, const char* family, const std::vector<qd>& num,
                const std::vector<qd>& den, const qd& z, long long m) {
  double pref = prefactor_sqrt(r2, family);
  double peak = 1.0;
  double s = detail::to_double(detail::hypergeometric_core(num, den, z, m, &peak));
  return checked_value(pref, s, peak, m, family);
}

double series_phi(double r2, const char* family, const std::vector<qd>& num,
                  const std::vector<qd>& den, double q, long long m) {
  double pref = prefactor_sqrt(r2, family);
  double peak = 1.0;
  double s = detail::to_double(
      detail::basic_hypergeometric_core(num, den, qd(q), qd(q), m, &peak));
  return checked_value(pref, s, peak, m, family);
}

void require_param(const std::map<std::string, double>& params, const char* family,
                   const char* name) {
  if (!params.count(name))
    throw std::invalid_argument(std::string(family) + " family requires parameter '" +
                                name + "'");
}

void require_domain(bool ok, const char* family, const std::string& what) {
  if (!ok)
    throw std::invalid_argument(std::string(family) + " family parameter out of domain: " +
                                what);
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::vector<std::string>& known, const char* family) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool ok = false;
    for (const std::string& k : known) ok = ok || (k == key);
    if (!ok)
      throw std::invalid_argument(std::string(family) + " family does not take parameter '" +
                                  key + "'");
  }
}

// ---------------------------------------------------------------- catalog

FamilyDescriptor build_krawtchouk(const std::map<std::string, double>& params) {
  require_param(params, "krawtchouk", "p");
  const double p = params.at("p");
  require_domain(p > 0.0 && p < 1.0, "krawtchouk", "p=" + std::to_string(p) + ", need 0 < p < 1");

  FamilyDescriptor f;
  f.name = Family::krawtchouk;
  f.params = {{"p", p}};
  f.spectrum_map = [](long long l, long long) { return static_cast<double>(l); };
  f.weight_map = [p](long long l, long long N) {
    return binomial(N, l) * std::pow(p, static_cast<double>(l)) *
           std::pow(1.0 - p, static_cast<double>(N - l));
  };
  f.weight_norm = [](long long) { return 1.0; };
  f.jacobi_map = [p](long long n, long long N) {
    JacobiCoeffs c;
    c.a = (1.0 - p) * static_cast<double>(n) + p * static_cast<double>(N - n);
    c.b2 = p * (1.0 - p) * static_cast<double>(n + 1) * static_cast<double>(N - n);
    return c;
  };
  f.poly_eval = [p](long long n, long long l, long long N) {
    double r2 = binomial(N, n) * std::pow(p / (1.0 - p), static_cast<double>(n));
    std::vector<qd> num = {qd(-static_cast<double>(n)), qd(-static_cast<double>(l))};
    std::vector<qd> den = {qd(-static_cast<double>(N))};
    qd z = detail::div(qd(1.0), qd(p));
    return series_F(r2, "krawtchouk", num, den, z, n);
  };
  return f;
}

FamilyDescriptor build_dual_hahn(const std::map<std::string, double>& params) {
  require_param(params, "dual_hahn", "gamma");
  require_param(params, "dual_hahn", "delta");
  const double g = params.at("gamma");
  const double d = params.at("delta");
  require_domain(g > -1.0, "dual_hahn", "gamma=" + std::to_string(g) + ", need gamma > -1");
  require_domain(d > -1.0, "dual_hahn", "delta=" + std::to_string(d) + ", need delta > -1");

  FamilyDescriptor f;
  f.name = Family::dual_hahn;
  f.params = {{"gamma", g}, {"delta", d}};
  f.spectrum_map = [g, d](long long l, long long) {
    return static_cast<double>(l) * (static_cast<double>(l) + g + d + 1.0);
  };
  f.weight_map = [g, d](long long l, long long N) {
    // N! / (l + g + d + 1)_{N+1} folded into a ratio product so large N
    // does not overflow through a bare factorial
    if (l == 0) {
      double r = 1.0;
      for (long long j = 1; j <= N; ++j)
        r *= static_cast<double>(j) / (g + d + 1.0 + static_cast<double>(j));
      return r;
    }
    double ll = static_cast<double>(l);
    double r = (2.0 * ll + g + d + 1.0) * pochhammer(g + 1.0, l) * binomial(N, l);
    for (long long j = 1; j <= N; ++j)
      r *= static_cast<double>(j) / (ll + g + d + static_cast<double>(j));
    r /= (ll + g + d + 1.0 + static_cast<double>(N));
    r /= pochhammer(d + 1.0, l);
    return r;
  };
  f.weight_norm = [d](long long N) {
    double r = 1.0;
    for (long long j = 1; j <= N; ++j) r *= (d + static_cast<double>(j)) / static_cast<double>(j);
    return r;
  };
  f.jacobi_map = [g, d](long long n, long long N) {
    double nn = static_cast<double>(n);
    double NN = static_cast<double>(N);
    JacobiCoeffs c;
    c.a = nn * (NN - nn + d + 1.0) + (nn + g + 1.0) * (NN - nn);
    c.b2 = (NN - nn + d) * (nn + g + 1.0) * static_cast<double>(n + 1) *
           static_cast<double>(N - n);
    return c;
  };
  f.poly_eval = [g, d](long long n, long long l, long long N) {
    double r2 = binomial(N, n) * pochhammer(g + 1.0, n) /
                pochhammer(d + static_cast<double>(N - n) + 1.0, n);
    qd sum_gd = detail::add(qd(g), qd(d));
    std::vector<qd> num = {qd(-static_cast<double>(n)), qd(-static_cast<double>(l)),
                           detail::add(sum_gd, static_cast<double>(l + 1))};
    std::vector<qd> den = {detail::add(qd(g), 1.0), qd(-static_cast<double>(N))};
    return series_F(r2, "dual_hahn", num, den, qd(1.0), n);
  };
  return f;
}

FamilyDescriptor build_chebyshev(const std::map<std::string, double>& params) {
  reject_unknown(params, {}, "chebyshev");

  FamilyDescriptor f;
  f.name = Family::chebyshev;
  f.spectrum_map = [](long long l, long long) { return static_cast<double>(l); };
  f.weight_map = [](long long, long long) { return 1.0; };
  f.weight_norm = [](long long N) { return 1.0 / static_cast<double>(N + 1); };
  f.jacobi_map = [](long long n, long long N) {
    double nn = static_cast<double>(n);
    double NN = static_cast<double>(N);
    JacobiCoeffs c;
    c.a = NN / 2.0;
    c.b2 = (nn + NN + 2.0) * static_cast<double>(n + 1) * static_cast<double>(n + 1) *
           static_cast<double>(N - n) / (4.0 * (2.0 * nn + 1.0) * (2.0 * nn + 3.0));
    return c;
  };
  f.poly_eval = [](long long n, long long l, long long N) {
    double r2 = static_cast<double>(2 * n + 1);
    for (long long j = 1; j <= n; ++j)
      r2 *= static_cast<double>(N - n + j) / static_cast<double>(N + 1 + j);
    std::vector<qd> num = {qd(-static_cast<double>(n)), qd(static_cast<double>(n + 1)),
                           qd(-static_cast<double>(l))};
    std::vector<qd> den = {qd(1.0), qd(-static_cast<double>(N))};
    return series_F(r2, "chebyshev", num, den, qd(1.0), n);
  };
  return f;
}

FamilyDescriptor build_hahn(const std::map<std::string, double>& params) {
  require_param(params, "hahn", "alpha");
  require_param(params, "hahn", "beta");
  const double al = params.at("alpha");
  const double be = params.at("beta");
  require_domain(al > -1.0, "hahn", "alpha=" + std::to_string(al) + ", need alpha > -1");
  require_domain(be > -1.0, "hahn", "beta=" + std::to_string(be) + ", need beta > -1");

  // A_0 is stored with its removable 0/0 cancelled (raw form divides by
  // 2n+alpha+beta+1, which vanishes at n=0 when alpha+beta = 0; the
  // alpha = beta = 0 point is a supported family member)
  auto A = [al, be](long long n, long long N) {
    double nn = static_cast<double>(n);
    double NN = static_cast<double>(N);
    if (n == 0) return (al + 1.0) * NN / (al + be + 2.0);
    return (nn + al + be + 1.0) * (nn + al + 1.0) * (NN - nn) /
           ((2.0 * nn + al + be + 1.0) * (2.0 * nn + al + be + 2.0));
  };
  auto C = [al, be](long long n, long long N) {
    if (n == 0) return 0.0;
    double nn = static_cast<double>(n);
    double NN = static_cast<double>(N);
    return nn * (nn + al + be + NN + 1.0) * (nn + be) /
           ((2.0 * nn + al + be) * (2.0 * nn + al + be + 1.0));
  };

  FamilyDescriptor f;
  f.name = Family::hahn;
  f.params = {{"alpha", al}, {"beta", be}};
  f.spectrum_map = [](long long l, long long) { return static_cast<double>(l); };
  f.weight_map = [al, be](long long l, long long N) {
    double r = 1.0;
    for (long long j = 1; j <= l; ++j) r *= (al + static_cast<double>(j)) / static_cast<double>(j);
    for (long long j = 1; j <= N - l; ++j)
      r *= (be + static_cast<double>(j)) / static_cast<double>(j);
    return r;
  };
  f.weight_norm = [al, be](long long N) {
    double r = 1.0;
    for (long long j = 1; j <= N; ++j)
      r *= static_cast<double>(j) / (al + be + 1.0 + static_cast<double>(j));
    return r;
  };
  f.jacobi_map = [A, C](long long n, long long N) {
    JacobiCoeffs c;
    // evaluate the C factor first: its exact zero at n+1 = 0-side boundary
    // short-circuits A(-1), whose raw denominator can vanish
    double cf = C(n + 1, N);
    c.b2 = (cf == 0.0) ? 0.0 : A(n, N) * cf;
    c.a = A(n, N) + C(n, N);
    return c;
  };
  f.poly_eval = [al, be](long long n, long long l, long long N) {
    double r2;
    if (n == 0) {
      r2 = 1.0;
    } else {
      double nn = static_cast<double>(n);
      r2 = (2.0 * nn + al + be + 1.0) * binomial(N, n) * pochhammer(al + 1.0, n) /
           pochhammer(be + 1.0, n);
      for (long long j = 0; j < N; ++j)
        r2 *= (al + be + 2.0 + static_cast<double>(j)) /
              (nn + al + be + 1.0 + static_cast<double>(j));
      r2 /= (nn + al + be + 1.0 + static_cast<double>(N));
    }
    qd sum_ab = detail::add(qd(al), qd(be));
    std::vector<qd> num = {qd(-static_cast<double>(n)),
                           detail::add(sum_ab, static_cast<double>(n + 1)),
                           qd(-static_cast<double>(l))};
    std::vector<qd> den = {detail::add(qd(al), 1.0), qd(-static_cast<double>(N))};
    return series_F(r2, "hahn", num, den, qd(1.0), n);
  };
  return f;
}

FamilyDescriptor build_dual_q_hahn(const std::map<std::string, double>& params) {
  require_param(params, "dual_q_hahn", "q");
  require_param(params, "dual_q_hahn", "gamma");
  require_param(params, "dual_q_hahn", "delta");
  const double q = params.at("q");
  const double g = params.at("gamma");
  const double d = params.at("delta");
  require_domain(q > 0.0 && q < 1.0, "dual_q_hahn", "q=" + std::to_string(q) + ", need 0 < q < 1");
  require_domain(g > 0.0 && g * q < 1.0, "dual_q_hahn",
                 "gamma=" + std::to_string(g) + ", need 0 < gamma < 1/q");
  require_domain(d > 0.0 && d * q < 1.0, "dual_q_hahn",
                 "delta=" + std::to_string(d) + ", need 0 < delta < 1/q");
  require_domain(g * d * q < 1.0, "dual_q_hahn",
                 "gamma*delta=" + std::to_string(g * d) + ", need gamma*delta < 1/q");

  FamilyDescriptor f;
  f.name = Family::dual_q_hahn;
  f.params = {{"q", q}, {"gamma", g}, {"delta", d}};
  f.spectrum_map = [q, g, d](long long l, long long) {
    return qp(q, -l) + g * d * qp(q, l + 1);
  };
  f.weight_map = [q, g, d](long long l, long long N) {
    return q_pochhammer(g * q, q, l) * q_pochhammer(g * d * q, q, l) *
           q_pochhammer(qp(q, -N), q, l) * (1.0 - g * d * qp(q, 2 * l + 1)) *
           qp(q, N * l - l * (l - 1) / 2) /
           (q_pochhammer(q, q, l) * q_pochhammer(g * d * qp(q, N + 2), q, l) *
            q_pochhammer(d * q, q, l) * (1.0 - g * d * q) *
            std::pow(-g * q, static_cast<double>(l)));
  };
  f.weight_norm = [q, g, d](long long N) {
    return q_pochhammer(d * q, q, N) * std::pow(g * q, static_cast<double>(N)) /
           q_pochhammer(g * d * q * q, q, N);
  };
  f.jacobi_map = [q, g, d](long long n, long long N) {
    JacobiCoeffs c;
    c.a = 1.0 + g * d * q - g * q * (1.0 - qp(q, n)) * (d - qp(q, n - N - 1)) -
          (1.0 - qp(q, n - N)) * (1.0 - g * qp(q, n + 1));
    c.b2 = g * q * (1.0 - g * qp(q, n + 1)) * (1.0 - qp(q, n - N)) *
           (1.0 - qp(q, n + 1)) * (d - qp(q, n - N));
    return c;
  };
  f.poly_eval = [q, g, d](long long n, long long l, long long N) {
    double r2 = q_pochhammer(g * q, q, n) * q_pochhammer(qp(q, -N), q, n) /
                (q_pochhammer(q, q, n) * q_pochhammer(qp(q, -N) / d, q, n) *
                 std::pow(g * d * q, static_cast<double>(n)));
    std::vector<qd> num = {qdp(q, -n), qdp(q, -l),
                           detail::mul(detail::mul(qd(g), qd(d)), qdp(q, l + 1))};
    std::vector<qd> den = {detail::mul(qd(g), qd(q)), qdp(q, -N)};
    return series_phi(r2, "dual_q_hahn", num, den, q, n);
  };
  return f;
}

FamilyDescriptor build_affine_q_krawtchouk(const std::map<std::string, double>& params) {
  require_param(params, "affine_q_krawtchouk", "q");
  require_param(params, "affine_q_krawtchouk", "p");
  const double q = params.at("q");
  const double p = params.at("p");
  require_domain(q > 0.0 && q < 1.0, "affine_q_krawtchouk",
                 "q=" + std::to_string(q) + ", need 0 < q < 1");
  require_domain(p > 0.0 && p * q < 1.0, "affine_q_krawtchouk",
                 "p=" + std::to_string(p) + ", need 0 < p < 1/q");

  FamilyDescriptor f;
  f.name = Family::affine_q_krawtchouk;
  f.params = {{"q", q}, {"p", p}};
  f.spectrum_map = [q](long long l, long long) { return qp(q, -l); };
  f.weight_map = [q, p](long long l, long long N) {
    return q_pochhammer(p * q, q, l) * q_pochhammer(q, q, N) *
           std::pow(p * q, static_cast<double>(-l)) /
           (q_pochhammer(q, q, l) * q_pochhammer(q, q, N - l));
  };
  f.weight_norm = [q, p](long long N) { return std::pow(p * q, static_cast<double>(N)); };
  f.jacobi_map = [q, p](long long n, long long N) {
    JacobiCoeffs c;
    c.a = 1.0 - ((1.0 - qp(q, n - N)) * (1.0 - p * qp(q, n + 1)) -
                 p * qp(q, n - N) * (1.0 - qp(q, n)));
    c.b2 = -p * qp(q, n - N + 1) * (1.0 - qp(q, n + 1)) * (1.0 - qp(q, n - N)) *
           (1.0 - p * qp(q, n + 1));
    return c;
  };
  f.poly_eval = [q, p](long long n, long long l, long long N) {
    double r2 = std::pow(p * q, static_cast<double>(-n)) * q_pochhammer(p * q, q, n) *
                q_pochhammer(q, q, N) /
                (q_pochhammer(q, q, n) * q_pochhammer(q, q, N - n));
    std::vector<qd> num = {qdp(q, -n), qd(0.0), qdp(q, -l)};
    std::vector<qd> den = {detail::mul(qd(p), qd(q)), qdp(q, -N)};
    return series_phi(r2, "affine_q_krawtchouk", num, den, q, n);
  };
  return f;
}

FamilyDescriptor build_q_krawtchouk(const std::map<std::string, double>& params) {
  require_param(params, "q_krawtchouk", "q");
  require_param(params, "q_krawtchouk", "p");
  const double q = params.at("q");
  const double p = params.at("p");
  require_domain(q > 0.0 && q < 1.0, "q_krawtchouk",
                 "q=" + std::to_string(q) + ", need 0 < q < 1");
  require_domain(p > 0.0, "q_krawtchouk", "p=" + std::to_string(p) + ", need p > 0");

  FamilyDescriptor f;
  f.name = Family::q_krawtchouk;
  f.params = {{"q", q}, {"p", p}};
  f.spectrum_map = [q](long long l, long long) { return qp(q, -l); };
  f.weight_map = [q, p](long long l, long long N) {
    return q_pochhammer(qp(q, -N), q, l) * std::pow(-p, static_cast<double>(-l)) /
           q_pochhammer(q, q, l);
  };
  f.weight_norm = [q, p](long long N) {
    return std::pow(p, static_cast<double>(N)) * qp(q, N * (N + 1) / 2) /
           q_pochhammer(-p * q, q, N);
  };
  f.jacobi_map = [q, p](long long n, long long N) {
    JacobiCoeffs c;
    c.a = 1.0 -
          (1.0 - qp(q, n - N)) * (1.0 + p * qp(q, n)) /
              ((1.0 + p * qp(q, 2 * n)) * (1.0 + p * qp(q, 2 * n + 1))) +
          p * qp(q, 2 * n - N - 1) * (1.0 + p * qp(q, n + N)) * (1.0 - qp(q, n)) /
              ((1.0 + p * qp(q, 2 * n - 1)) * (1.0 + p * qp(q, 2 * n)));
    c.b2 = -p * qp(q, 2 * n - N + 1) * (1.0 + p * qp(q, n + N + 1)) *
           (1.0 - qp(q, n + 1)) * (1.0 - qp(q, n - N)) * (1.0 + p * qp(q, n)) /
           ((1.0 + p * qp(q, 2 * n)) * (1.0 + p * qp(q, 2 * n + 1)) *
            (1.0 + p * qp(q, 2 * n + 1)) * (1.0 + p * qp(q, 2 * n + 2)));
    return c;
  };
  f.poly_eval = [q, p](long long n, long long l, long long N) {
    double r2 = q_pochhammer(-p, q, n) * q_pochhammer(qp(q, -N), q, n) *
                (1.0 + p * qp(q, 2 * n)) /
                (q_pochhammer(q, q, n) * q_pochhammer(-p * qp(q, N + 1), q, n) *
                 (1.0 + p) * std::pow(-p * qp(q, -N), static_cast<double>(n)) *
                 qp(q, n * n));
    std::vector<qd> num = {qdp(q, -n), qdp(q, -l),
                           detail::neg(detail::mul(qd(p), qdp(q, n)))};
    std::vector<qd> den = {qdp(q, -N), qd(0.0)};
    return series_phi(r2, "q_krawtchouk", num, den, q, n);
  };
  return f;
}

FamilyDescriptor build_q_hahn(const std::map<std::string, double>& params) {
  require_param(params, "q_hahn", "q");
  require_param(params, "q_hahn", "alpha");
  require_param(params, "q_hahn", "beta");
  const double q = params.at("q");
  const double al = params.at("alpha");
  const double be = params.at("beta");
  require_domain(q > 0.0 && q < 1.0, "q_hahn", "q=" + std::to_string(q) + ", need 0 < q < 1");
  require_domain(al > 0.0 && al * q < 1.0, "q_hahn",
                 "alpha=" + std::to_string(al) + ", need 0 < alpha < 1/q");
  require_domain(be > 0.0 && be * q < 1.0, "q_hahn",
                 "beta=" + std::to_string(be) + ", need 0 < beta < 1/q");

  // A_0 is stored with its removable 0/0 cancelled: the raw form divides by
  // (1 - alpha*beta*q^{2n+1}), which vanishes at n=0 on the admissible
  // surface alpha*beta*q = 1
  auto A = [q, al, be](long long n, long long N) {
    if (n == 0) return (1.0 - qp(q, -N)) * (1.0 - al * q) / (1.0 - al * be * q * q);
    return (1.0 - qp(q, n - N)) * (1.0 - al * qp(q, n + 1)) *
           (1.0 - al * be * qp(q, n + 1)) /
           ((1.0 - al * be * qp(q, 2 * n + 1)) * (1.0 - al * be * qp(q, 2 * n + 2)));
  };
  auto C = [q, al, be](long long n, long long N) {
    if (n == 0) return 0.0;
    return -al * qp(q, n - N) * (1.0 - qp(q, n)) * (1.0 - al * be * qp(q, n + N + 1)) *
           (1.0 - be * qp(q, n)) /
           ((1.0 - al * be * qp(q, 2 * n)) * (1.0 - al * be * qp(q, 2 * n + 1)));
  };

  FamilyDescriptor f;
  f.name = Family::q_hahn;
  f.params = {{"q", q}, {"alpha", al}, {"beta", be}};
  f.spectrum_map = [q](long long l, long long) { return qp(q, -l); };
  f.weight_map = [q, al, be](long long l, long long N) {
    return q_pochhammer(al * q, q, l) * q_pochhammer(qp(q, -N), q, l) *
           std::pow(al * be * q, static_cast<double>(-l)) /
           (q_pochhammer(q, q, l) * q_pochhammer(qp(q, -N) / be, q, l));
  };
  f.weight_norm = [q, al, be](long long N) {
    return q_pochhammer(be * q, q, N) * std::pow(al * q, static_cast<double>(N)) /
           q_pochhammer(al * be * q * q, q, N);
  };
  f.jacobi_map = [A, C](long long n, long long N) {
    JacobiCoeffs c;
    double cf = C(n + 1, N);
    c.b2 = (cf == 0.0) ? 0.0 : A(n, N) * cf;
    c.a = 1.0 - A(n, N) - C(n, N);
    return c;
  };
  f.poly_eval = [q, al, be](long long n, long long l, long long N) {
    double r2;
    if (n == 0) {
      r2 = 1.0;
    } else {
      // the (1 - alpha*beta*q) factor cancels between the two q-Pochhammers
      double B = (1.0 - al * be * qp(q, 2 * n + 1)) * q_pochhammer(al * be * q * q, q, n - 1);
      r2 = q_pochhammer(al * q, q, n) * q_pochhammer(qp(q, -N), q, n) * B *
           qp(q, N * n - n * (n - 1) / 2) /
           (q_pochhammer(q, q, n) * q_pochhammer(al * be * qp(q, N + 2), q, n) *
            q_pochhammer(be * q, q, n) * std::pow(-al * q, static_cast<double>(n)));
    }
    std::vector<qd> num = {qdp(q, -n),
                           detail::mul(detail::mul(qd(al), qd(be)), qdp(q, n + 1)),
                           qdp(q, -l)};
    std::vector<qd> den = {detail::mul(qd(al), qd(q)), qdp(q, -N)};
    return series_phi(r2, "q_hahn", num, den, q, n);
  };
  return f;
}

FamilyDescriptor build_dual_q_krawtchouk(const std::map<std::string, double>& params) {
  require_param(params, "dual_q_krawtchouk", "q");
  require_param(params, "dual_q_krawtchouk", "c");
  const double q = params.at("q");
  const double c = params.at("c");
  require_domain(q > 0.0 && q < 1.0, "dual_q_krawtchouk",
                 "q=" + std::to_string(q) + ", need 0 < q < 1");
  require_domain(c < 0.0, "dual_q_krawtchouk", "c=" + std::to_string(c) + ", need c < 0");

  FamilyDescriptor f;
  f.name = Family::dual_q_krawtchouk;
  f.params = {{"q", q}, {"c", c}};
  f.spectrum_map = [q, c](long long l, long long N) { return qp(q, -l) + c * qp(q, l - N); };
  f.weight_map = [q, c](long long l, long long N) {
    return q_pochhammer(c * qp(q, -N), q, l) * q_pochhammer(qp(q, -N), q, l) *
           (1.0 - c * qp(q, 2 * l - N)) * std::pow(c, static_cast<double>(-l)) *
           qp(q, l * (2 * N - l)) /
           (q_pochhammer(q, q, l) * q_pochhammer(c * q, q, l) * (1.0 - c * qp(q, -N)));
  };
  f.weight_norm = [q, c](long long N) { return 1.0 / q_pochhammer(1.0 / c, q, N); };
  f.jacobi_map = [q, c](long long n, long long N) {
    JacobiCoeffs co;
    co.a = (1.0 + c) * qp(q, n - N);
    co.b2 = c * qp(q, -N) * (1.0 - qp(q, n - N)) * (1.0 - qp(q, n + 1));
    return co;
  };
  f.poly_eval = [q, c](long long n, long long l, long long N) {
    double r2 = q_pochhammer(qp(q, -N), q, n) /
                (q_pochhammer(q, q, n) * std::pow(c * qp(q, -N), static_cast<double>(n)));
    std::vector<qd> num = {qdp(q, -n), qdp(q, -l), detail::mul(qd(c), qdp(q, l - N))};
    std::vector<qd> den = {qdp(q, -N), qd(0.0)};
    return series_phi(r2, "dual_q_krawtchouk", num, den, q, n);
  };
  return f;
}

}  // namespace

// ------------------------------------------------------------- dispatching

Family family_from_name(const std::string& name) {
  for (Family f : all_families())
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected one of: krawtchouk, dual_hahn, chebyshev, hahn, "
                              "dual_q_hahn, affine_q_krawtchouk, q_krawtchouk, q_hahn, "
                              "dual_q_krawtchouk)");
}

const std::string& family_name(Family f) {
  static const std::map<Family, std::string> names = {
      {Family::krawtchouk, "krawtchouk"},
      {Family::dual_hahn, "dual_hahn"},
      {Family::chebyshev, "chebyshev"},
      {Family::hahn, "hahn"},
      {Family::dual_q_hahn, "dual_q_hahn"},
      {Family::affine_q_krawtchouk, "affine_q_krawtchouk"},
      {Family::q_krawtchouk, "q_krawtchouk"},
      {Family::q_hahn, "q_hahn"},
      {Family::dual_q_krawtchouk, "dual_q_krawtchouk"},
  };
  return names.at(f);
}

bool family_is_q(Family f) {
  switch (f) {
    case Family::krawtchouk:
    case Family::dual_hahn:
    case Family::chebyshev:
    case Family::hahn:
      return false;
    default:
      return true;
  }
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> fams = {
      Family::krawtchouk,    Family::dual_hahn,
      Family::chebyshev,     Family::hahn,
      Family::dual_q_hahn,   Family::affine_q_krawtchouk,
      Family::q_krawtchouk,  Family::q_hahn,
      Family::dual_q_krawtchouk,
  };
  return fams;
}

const std::vector<std::string>& family_param_names(Family f) {
  static const std::map<Family, std::vector<std::string>> names = {
      {Family::krawtchouk, {"p"}},
      {Family::dual_hahn, {"gamma", "delta"}},
      {Family::chebyshev, {}},
      {Family::hahn, {"alpha", "beta"}},
      {Family::dual_q_hahn, {"q", "gamma", "delta"}},
      {Family::affine_q_krawtchouk, {"q", "p"}},
      {Family::q_krawtchouk, {"q", "p"}},
      {Family::q_hahn, {"q", "alpha", "beta"}},
      {Family::dual_q_krawtchouk, {"q", "c"}},
  };
  return names.at(f);
}

FamilyDescriptor make_family(Family f, const std::map<std::string, double>& params) {
  const char* fname = family_name(f).c_str();
  reject_unknown(params, family_param_names(f), fname);
  switch (f) {
    case Family::krawtchouk: return build_krawtchouk(params);
    case Family::dual_hahn: return build_dual_hahn(params);
    case Family::chebyshev: return build_chebyshev(params);
    case Family::hahn: return build_hahn(params);
    case Family::dual_q_hahn: return build_dual_q_hahn(params);
    case Family::affine_q_krawtchouk: return build_affine_q_krawtchouk(params);
    case Family::q_krawtchouk: return build_q_krawtchouk(params);
    case Family::q_hahn: return build_q_hahn(params);
    case Family::dual_q_krawtchouk: return build_dual_q_krawtchouk(params);
  }
  throw std::invalid_argument("unreachable family value");
}

FamilyDescriptor make_family(const std::string& name,
                             const std::map<std::string, double>& params) {
  return make_family(family_from_name(name), params);
}

// ---------------------------------------------------- checked accessors

namespace {

void check_level(const FamilyDescriptor& f, long long N) {
  if (N < 0) throw std::invalid_argument("sector level N must be nonnegative");
  long long cap = max_sector_level(family_is_q(f.name));
  if (N > cap)
    throw std::invalid_argument("sector level N=" + std::to_string(N) +
                                " exceeds the cap " + std::to_string(cap) +
                                " (set CONVSPEC_MAX_N to raise it)");
}

void check_index(long long i, long long N, const char* what) {
  if (i < 0 || i > N)
    throw std::invalid_argument(std::string(what) + "=" + std::to_string(i) +
                                " outside [0, " + std::to_string(N) + "]");
}

}  // namespace

double family_spectrum(const FamilyDescriptor& f, long long l, long long N) {
  check_level(f, N);
  check_index(l, N, "l");
  return f.spectrum_map(l, N);
}

double family_weight(const FamilyDescriptor& f, long long l, long long N) {
  check_level(f, N);
  check_index(l, N, "l");
  return f.weight_map(l, N);
}

double family_weight_normalized(const FamilyDescriptor& f, long long l, long long N) {
  check_level(f, N);
  check_index(l, N, "l");
  return f.weight_norm(N) * f.weight_map(l, N);
}

double family_polynomial(const FamilyDescriptor& f, long long n, long long l,
                         long long N) {
  check_level(f, N);
  check_index(n, N, "n");
  check_index(l, N, "l");
  return f.poly_eval(n, l, N);
}

}  // namespace convspec
