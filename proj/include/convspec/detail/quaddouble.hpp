#pragma once
// Non-overlapping four-double accumulator for the terminating series
// evaluators.  On the hardest admissible parameter points the series sum
// terms of size ~1e35 down to results near 1e-80, so plain double (and even
// double-double) accumulation leaves cancellation noise far above the
// target tolerances.  Four components give ~2^-209 ~ 1e-63 of headroom,
// which keeps the noise at eps*max_term ~ 1e-28 absolute.
//
// Built from the standard error-free transforms (two_sum / two_prod with
// FMA) and the usual five-term renormalization cascade.  Multiplication
// and division trade speed for transparency: exact partial products are
// folded in one double at a time through the accurate qd+double add.
// Series here have at most a few dozen terms, so this is never hot.

#include <cmath>

namespace convspec::detail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double v = s - a;
  err = (a - (s - v)) + (b - v);
  return s;
}

// requires |a| >= |b| or a == 0
inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

struct qd {
  double x[4] = {0.0, 0.0, 0.0, 0.0};

  qd() = default;
  qd(double d) : x{d, 0.0, 0.0, 0.0} {}
  qd(double a, double b, double c, double d) : x{a, b, c, d} {}

  double hi() const { return x[0]; }
  bool is_zero() const { return x[0] == 0.0; }
};

// Renormalize five decreasing-magnitude components into four
// non-overlapping ones; zero components are squeezed out.
inline qd renorm(double c0, double c1, double c2, double c3, double c4) {
  double s0, s1, s2 = 0.0, s3 = 0.0;
  s0 = quick_two_sum(c3, c4, c4);
  s0 = quick_two_sum(c2, s0, c3);
  s0 = quick_two_sum(c1, s0, c2);
  c0 = quick_two_sum(c0, s0, c1);

  s0 = c0;
  s1 = c1;
  if (s1 != 0.0) {
    s1 = quick_two_sum(s1, c2, s2);
    if (s2 != 0.0) {
      s2 = quick_two_sum(s2, c3, s3);
      if (s3 != 0.0)
        s3 += c4;
      else
        s2 = quick_two_sum(s2, c4, s3);
    } else {
      s1 = quick_two_sum(s1, c3, s2);
      if (s2 != 0.0)
        s2 = quick_two_sum(s2, c4, s3);
      else
        s1 = quick_two_sum(s1, c4, s2);
    }
  } else {
    s0 = quick_two_sum(s0, c2, s1);
    if (s1 != 0.0) {
      s1 = quick_two_sum(s1, c3, s2);
      if (s2 != 0.0)
        s2 = quick_two_sum(s2, c4, s3);
      else
        s1 = quick_two_sum(s1, c4, s2);
    } else {
      s0 = quick_two_sum(s0, c3, s1);
      if (s1 != 0.0)
        s1 = quick_two_sum(s1, c4, s2);
      else
        s0 = quick_two_sum(s0, c4, s1);
    }
  }
  return qd(s0, s1, s2, s3);
}

inline qd add(const qd& a, double b) {
  double e;
  double s0 = two_sum(a.x[0], b, e);
  double s1 = two_sum(a.x[1], e, e);
  double s2 = two_sum(a.x[2], e, e);
  double s3 = two_sum(a.x[3], e, e);
  return renorm(s0, s1, s2, s3, e);
}

inline qd add(const qd& a, const qd& b) {
  qd r = add(a, b.x[0]);
  r = add(r, b.x[1]);
  r = add(r, b.x[2]);
  r = add(r, b.x[3]);
  return r;
}

inline qd neg(const qd& a) { return qd(-a.x[0], -a.x[1], -a.x[2], -a.x[3]); }

inline qd sub(const qd& a, const qd& b) { return add(a, neg(b)); }

inline qd mul(const qd& a, double b) {
  double q0, q1, q2;
  double p0 = two_prod(a.x[0], b, q0);
  double p1 = two_prod(a.x[1], b, q1);
  double p2 = two_prod(a.x[2], b, q2);
  double p3 = a.x[3] * b;
  qd r(p0);
  r = add(r, p1);
  r = add(r, q0);
  r = add(r, p2);
  r = add(r, q1);
  r = add(r, p3);
  r = add(r, q2);
  return r;
}

inline qd mul(const qd& a, const qd& b) {
  // exact partials a_i*b_j with i+j <= 3, folded in from largest down
  double e00, e01, e10, e02, e11, e20;
  double p00 = two_prod(a.x[0], b.x[0], e00);
  double p01 = two_prod(a.x[0], b.x[1], e01);
  double p10 = two_prod(a.x[1], b.x[0], e10);
  double p02 = two_prod(a.x[0], b.x[2], e02);
  double p11 = two_prod(a.x[1], b.x[1], e11);
  double p20 = two_prod(a.x[2], b.x[0], e20);
  double p03 = a.x[0] * b.x[3];
  double p12 = a.x[1] * b.x[2];
  double p21 = a.x[2] * b.x[1];
  double p30 = a.x[3] * b.x[0];
  qd r(p00);
  r = add(r, p01);
  r = add(r, p10);
  r = add(r, e00);
  r = add(r, p02);
  r = add(r, p11);
  r = add(r, p20);
  r = add(r, e01);
  r = add(r, e10);
  r = add(r, p03);
  r = add(r, p12);
  r = add(r, p21);
  r = add(r, p30);
  r = add(r, e02);
  r = add(r, e11);
  r = add(r, e20);
  return r;
}

// long division with double quotient digits; b.x[0] must be nonzero
inline qd div(const qd& a, const qd& b) {
  double q0 = a.x[0] / b.x[0];
  qd r = sub(a, mul(b, q0));
  double q1 = r.x[0] / b.x[0];
  r = sub(r, mul(b, q1));
  double q2 = r.x[0] / b.x[0];
  r = sub(r, mul(b, q2));
  double q3 = r.x[0] / b.x[0];
  r = sub(r, mul(b, q3));
  double q4 = r.x[0] / b.x[0];
  return renorm(q0, q1, q2, q3, q4);
}

inline double to_double(const qd& a) { return ((a.x[3] + a.x[2]) + a.x[1]) + a.x[0]; }

inline qd pow_int(const qd& base, long long e) {
  if (e < 0) return div(qd(1.0), pow_int(base, -e));
  qd r(1.0);
  qd b = base;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace convspec::detail
