#include "xxchain/specfun.hpp"

#include <cmath>
#include <string>

#include "dd.hpp"

namespace xxchain::specfun {

namespace {

// Parameters in this family are integers or half-integers given exactly, so a
// Pochhammer factor counts as zero when within 1e-12 of the integer 0.
bool factor_vanishes(double v) { return std::abs(v) <= 1e-12; }

bool is_nonpositive_integer(double v) {
  const double r = std::round(v);
  return r <= 0.0 && std::abs(v - r) <= 1e-12;
}

}  // namespace

double pochhammer(double c, int k) {
  if (k < 0) throw IndexOutOfRange("pochhammer: order must be nonnegative");
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= c + static_cast<double>(j);
  return p;
}

double hyp_terminating(const HypergeometricSpec& spec) {
  if (spec.term_cap < 0)
    throw InvalidSeries("hyp_terminating: term_cap must be nonnegative");
  if (spec.term_cap == HypergeometricSpec::kUncapped) {
    bool terminates = false;
    for (double a : spec.numerator_params)
      terminates = terminates || is_nonpositive_integer(a);
    if (!terminates)
      throw InvalidSeries(
          "hyp_terminating: no nonpositive-integer numerator parameter and no "
          "term cap; series does not terminate");
  }

  // term_{k+1} = term_k * prod(a_i + k) / prod(b_j + k) * z / (k + 1).
  // Summing through the ratio keeps every intermediate on the scale of the
  // terms themselves; recomputing Pochhammers per term would overflow first.
  // Terms and the accumulator are carried in compensated double-double: on
  // the orthogonality grids near N ~ 31 the terms reach ~1e9 and cancel to
  // +-1, which one double of working precision cannot resolve to 1e-9.
  using detail::dd;
  dd sum{1.0, 0.0};
  dd term{1.0, 0.0};
  for (int k = 0; k < spec.term_cap; ++k) {
    dd num{1.0, 0.0};
    bool terminated = false;
    for (double a : spec.numerator_params) {
      const dd factor = detail::two_sum(a, static_cast<double>(k));
      if (factor_vanishes(factor.hi)) {
        terminated = true;  // (a)_{k+1} = 0: the series ends at index k
        break;
      }
      num = detail::mul(num, factor);
    }
    if (terminated) break;
    dd den{1.0, 0.0};
    for (double b : spec.denominator_params) {
      const dd factor = detail::two_sum(b, static_cast<double>(k));
      if (factor_vanishes(factor.hi))
        throw InvalidSeries(
            "hyp_terminating: denominator Pochhammer vanishes at k = " +
            std::to_string(k + 1) + " before the series terminates");
      den = detail::mul(den, factor);
    }
    term = detail::div(detail::mul(term, num), den);
    term = detail::div(detail::mul(term, spec.argument), static_cast<double>(k + 1));
    sum = detail::add(sum, term);
  }
  return detail::collapse(sum);
}

}  // namespace xxchain::specfun
