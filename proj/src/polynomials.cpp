#include "convspec/polynomials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "convspec/errors.hpp"

namespace convspec {

double pochhammer(double a, long long n) {
  if (n < 0) throw std::invalid_argument("pochhammer: n must be nonnegative");
  double r = 1.0;
  for (long long j = 0; j < n; ++j) r *= (a + static_cast<double>(j));
  return r;
}

double q_pochhammer(double a, double q, long long n) {
  if (n < 0) throw std::invalid_argument("q_pochhammer: n must be nonnegative");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q_pochhammer: q must lie in (0, 1)");
  double r = 1.0;
  for (long long j = 0; j < n; ++j) r *= (1.0 - a * std::pow(q, static_cast<double>(j)));
  return r;
}

namespace detail {

qd hypergeometric_core(const std::vector<qd>& num, const std::vector<qd>& den,
                       const qd& z, long long m, double* peak) {
  qd sum(1.0);
  qd term(1.0);
  double pk = 1.0;
  for (long long j = 0; j < m; ++j) {
    qd ratio = div(z, qd(static_cast<double>(j) + 1.0));
    for (const qd& a : num) ratio = mul(ratio, add(a, static_cast<double>(j)));
    for (const qd& b : den) {
      qd f = add(b, static_cast<double>(j));
      if (f.is_zero())
        throw std::invalid_argument(
            "hypergeometric series: denominator parameter " + std::to_string(to_double(b)) +
            " vanishes at term " + std::to_string(j));
      ratio = div(ratio, f);
    }
    term = mul(term, ratio);
    sum = add(sum, term);
    pk = std::max(pk, std::abs(to_double(term)));
  }
  if (peak) *peak = pk;
  return sum;
}

qd basic_hypergeometric_core(const std::vector<qd>& num,
                             const std::vector<qd>& den, const qd& q,
                             const qd& z, long long m, double* peak) {
  qd sum(1.0);
  qd term(1.0);
  qd qj(1.0);  // q^j
  double pk = 1.0;
  for (long long j = 0; j < m; ++j) {
    qd qj1 = mul(qj, q);  // q^{j+1}
    qd ratio = div(z, sub(qd(1.0), qj1));
    for (const qd& a : num) ratio = mul(ratio, sub(qd(1.0), mul(a, qj)));
    for (const qd& b : den) {
      qd f = sub(qd(1.0), mul(b, qj));
      if (f.is_zero())
        throw std::invalid_argument(
            "basic hypergeometric series: denominator parameter " +
            std::to_string(to_double(b)) + " vanishes at term " + std::to_string(j));
      ratio = div(ratio, f);
    }
    term = mul(term, ratio);
    sum = add(sum, term);
    pk = std::max(pk, std::abs(to_double(term)));
    qj = qj1;
  }
  if (peak) *peak = pk;
  return sum;
}

double series_noise_floor(double peak, long long m) {
  // ~200 bits of working precision kept out of the 4-limb format's 212,
  // the slack covering error growth across the term recurrences
  return 1e-60 * peak * static_cast<double>(m + 1);
}

}  // namespace detail

double hypergeometric_terminating(const std::vector<double>& num,
                                  const std::vector<double>& den, double z) {
  long long m = -1;
  for (double a : num) {
    double r = std::round(a);
    if (r <= 0.0 && std::abs(a - r) <= 1e-9 * std::max(1.0, std::abs(r))) {
      long long cand = static_cast<long long>(-r);
      if (m < 0 || cand < m) m = cand;
    }
  }
  if (m < 0)
    throw std::invalid_argument(
        "hypergeometric_terminating: no numerator parameter is a nonpositive integer");
  std::vector<detail::qd> nq(num.begin(), num.end());
  std::vector<detail::qd> dq(den.begin(), den.end());
  double peak = 1.0;
  double s = detail::to_double(detail::hypergeometric_core(nq, dq, detail::qd(z), m, &peak));
  if (detail::series_noise_floor(peak, m) > 1e-10 * std::max(1.0, std::abs(s)))
    throw numerical_error(
        "hypergeometric_terminating: cancellation exceeds the working precision; "
        "the sum lies below the evaluation noise floor");
  return s;
}

double basic_hypergeometric_3phi2(const std::array<double, 3>& num,
                                  const std::array<double, 2>& den, double q,
                                  double z) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("basic_hypergeometric_3phi2: q must lie in (0, 1)");
  long long m = -1;
  for (double a : num) {
    if (!(a > 0.0)) continue;  // zero or negative parameters never terminate
    double me = std::round(-std::log(a) / std::log(q));
    if (me < 0.0) continue;
    long long cand = static_cast<long long>(me);
    double target = std::pow(q, -static_cast<double>(cand));
    if (std::abs(a - target) <= 1e-9 * target) {
      if (m < 0 || cand < m) m = cand;
    }
  }
  if (m < 0)
    throw std::invalid_argument(
        "basic_hypergeometric_3phi2: no numerator parameter of the form q^-m");
  std::vector<detail::qd> nq(num.begin(), num.end());
  std::vector<detail::qd> dq(den.begin(), den.end());
  double peak = 1.0;
  double s = detail::to_double(
      detail::basic_hypergeometric_core(nq, dq, detail::qd(q), detail::qd(z), m, &peak));
  if (detail::series_noise_floor(peak, m) > 1e-10 * std::max(1.0, std::abs(s)))
    throw numerical_error(
        "basic_hypergeometric_3phi2: cancellation exceeds the working precision; "
        "the sum lies below the evaluation noise floor");
  return s;
}

Eigen::VectorXd recurrence_eval(const JacobiOperator& j, double E) {
  const long long N = j.level();
  if (N < 0) throw std::invalid_argument("recurrence_eval: empty operator");
  if (static_cast<long long>(j.offdiag_mag.size()) != N)
    throw std::invalid_argument("recurrence_eval: offdiag_mag length must be N");
  for (long long n = 0; n < N; ++n)
    if (!(j.offdiag_mag[n] > 0.0))
      throw numerical_error("recurrence_eval: off-diagonal magnitude vanishes at index " +
                            std::to_string(n) + "; sector decouples");

  Eigen::VectorXd P(N + 1);
  P[0] = 1.0;
  if (N == 0) return P;

  const std::vector<double>& a = j.diag;
  const std::vector<double>& b = j.offdiag_mag;

  Eigen::VectorXd F(N + 1), B(N + 1);
  F[0] = 1.0;
  F[1] = (E - a[0]) / b[0];
  for (long long n = 1; n < N; ++n)
    F[n + 1] = ((E - a[n]) * F[n] - b[n - 1] * F[n - 1]) / b[n];
  B[N] = 1.0;
  B[N - 1] = (E - a[N]) / b[N - 1];
  for (long long n = N - 1; n >= 1; --n)
    B[n - 1] = ((E - a[n]) * B[n] - b[n] * B[n + 1]) / b[n - 1];

  // splice index: row where the glued solution's eigen-equation residual,
  // normalized to a unit component at that row, is smallest
  long long best = -1;
  double best_res = std::numeric_limits<double>::infinity();
  for (long long k = 0; k <= N; ++k) {
    if (F[k] == 0.0 || B[k] == 0.0) continue;
    double g = E - a[k];
    if (k > 0) g -= b[k - 1] * F[k - 1] / F[k];
    if (k < N) g -= b[k] * B[k + 1] / B[k];
    double res = std::abs(g);
    if (res < best_res) {
      best_res = res;
      best = k;
    }
  }
  if (best < 0) best = N;  // degenerate sweeps: fall back to pure forward

  for (long long n = 0; n <= best; ++n) P[n] = F[n];
  if (best < N) {
    double scale = F[best] / B[best];
    for (long long n = best + 1; n <= N; ++n) P[n] = B[n] * scale;
  }
  return P;
}

}  // namespace convspec
