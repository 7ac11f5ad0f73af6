#pragma once
#include <array>
#include <vector>

#include <Eigen/Core>

#include "convspec/detail/quaddouble.hpp"
#include "convspec/hamiltonian.hpp"

namespace convspec {

// (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.  Exact zero when a is a
// nonpositive integer with -a < n.
double pochhammer(double a, long long n);

// (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j); (a;q)_0 = 1.  Requires 0 < q < 1.
double q_pochhammer(double a, double q, long long n);

// Terminating generalized hypergeometric sum
//   sum_{j=0}^{m} prod_i (num_i)_j / prod_i (den_i)_j * z^j / j!
// where m is the smallest nonnegative integer with -m among the numerator
// parameters; errors if none exists or a denominator Pochhammer vanishes
// inside the terminating range.  Parameters are taken exactly as given and
// the sum is carried in extended precision (terms can exceed the result by
// tens of orders of magnitude before cancelling).  A double that merely
// approximates an intended parameter shifts the sum by up to the largest
// term times the rounding, which can dwarf a deeply cancelled result; build
// such parameters exactly or use the qd cores.  Precision cap: when the
// cancellation is so deep that the result sits below the evaluation noise
// floor (roughly 60 decimal digits under the largest term), the evaluator
// throws numerical_error instead of returning noise.
double hypergeometric_terminating(const std::vector<double>& num,
                                  const std::vector<double>& den, double z);

// Terminating basic hypergeometric sum with three numerator and two
// denominator parameters,
//   sum_{j=0}^{m} (a1,a2,a3;q)_j / ((q;q)_j (b1,b2;q)_j) * z^j,
// terminating at the smallest m with q^-m among the numerator parameters.
// (With this shape the general series' compensating power-of-q factor is
// identically one.)  Same exactness, error, and precision-cap conventions
// as above.
double basic_hypergeometric_3phi2(const std::array<double, 3>& num,
                                  const std::array<double, 2>& den, double q,
                                  double z);

// Values P_0(E) .. P_N(E) of the recurrence polynomials of the operator's
// real gauge: P_0 = 1 and
//   E P_n = b_{n-1} P_{n-1} + a_n P_n + b_n P_{n+1},  b_n = offdiag_mag[n].
// Evaluated by gluing a forward and a backward sweep at the row where the
// glued vector's residual is smallest; identical to the forward recurrence
// in exact arithmetic but stable when P decays towards either end (the
// forward-only version loses the top of the q-family spectra entirely).
// Errors when some b_n vanishes (sector decouples; simple spectrum lost).
Eigen::VectorXd recurrence_eval(const JacobiOperator& j, double E);

namespace detail {

// Extended-precision cores behind the public evaluators.  The catalog
// builds parameters like q^-n directly in qd before calling these; a
// parameter pre-rounded to double would already have lost the worst cases.
// If peak is non-null it receives the largest |term| seen, the scale that
// sets the noise floor of the cancelled sum (series_noise_floor below).
qd hypergeometric_core(const std::vector<qd>& num, const std::vector<qd>& den,
                       const qd& z, long long m, double* peak = nullptr);
qd basic_hypergeometric_core(const std::vector<qd>& num,
                             const std::vector<qd>& den, const qd& q,
                             const qd& z, long long m, double* peak = nullptr);

// Conservative absolute error bound for a terminating sum whose largest
// term was peak: per-term representation error times the term count.
double series_noise_floor(double peak, long long m);

}  // namespace detail

}  // namespace convspec
