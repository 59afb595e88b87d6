#pragma once

#include <cmath>

// Compensated (double-double) arithmetic for the few inner loops whose
// tolerances sit below what one double of working precision can deliver:
// the alternating terminating hypergeometric sums (terms up to ~1e9 cancel
// to +-1 on the orthogonality grid) and the orthonormal three-term
// recurrence near N ~ 31.  Values are pairs of doubles with |lo| <= ulp(hi);
// every operation is a fixed sequence of IEEE double operations, so results
// stay bit-deterministic.

namespace xxchain::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| (or a == 0).
inline dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd sub(dd a, dd b) { return add(a, dd{-b.hi, -b.lo}); }

inline dd mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd div(dd a, dd b) {
  const double q1 = a.hi / b.hi;
  dd r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  const double q3 = r.hi / b.hi;
  return add(quick_two_sum(q1, q2), q3);
}

inline dd div(dd a, double b) { return div(a, dd{b, 0.0}); }

// sqrt(a) by one Newton correction on the double estimate.
inline dd sqrt(dd a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  const double y = std::sqrt(a.hi);
  const dd r = sub(a, two_prod(y, y));
  return quick_two_sum(y, r.hi / (2.0 * y));
}

inline double collapse(dd a) { return a.hi + a.lo; }

}  // namespace xxchain::detail
