#pragma once
// Independent eigenvalue oracle for symmetric tridiagonal matrices:
// bisection on the Sturm sign-change count, bisected down to the last
// representable double.  Slow and simple on purpose; the library's QL
// solver is tested against this, never the other way round.

#include <cmath>
#include <vector>

namespace oracle {

// number of eigenvalues strictly below x (sign changes of the LDL^T pivots)
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                       double x) {
  int n = static_cast<int>(diag.size());
  int cnt = 0;
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    double t = diag[i] - x;
    if (i > 0) t -= off[i - 1] * (off[i - 1] / d);
    if (t == 0.0) t = -1e-300;  // nudge off an exact pivot zero
    d = t;
    if (d < 0.0) ++cnt;
  }
  return cnt;
}

inline std::vector<double> sturm_eigenvalues(const std::vector<double>& diag,
                                             const std::vector<double>& off) {
  int n = static_cast<int>(diag.size());
  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;

  std::vector<double> ev(n);
  for (int k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (;;) {
      double mid = a + 0.5 * (b - a);
      if (!(mid > a && mid < b)) break;  // interval at rounding resolution
      if (sturm_count(diag, off, mid) >= k + 1)
        b = mid;
      else
        a = mid;
    }
    ev[k] = a + 0.5 * (b - a);
  }
  return ev;
}

}  // namespace oracle
