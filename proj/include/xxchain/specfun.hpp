#pragma once

#include <limits>
#include <vector>

#include "xxchain/errors.hpp"

namespace xxchain::specfun {

// Rising factorial (c)_k = c(c+1)...(c+k-1), with (c)_0 = 1 exactly.
double pochhammer(double c, int k);

// A terminating generalized hypergeometric series
//
//   rFs(a_1..a_r; b_1..b_s; z) = sum_k  prod_i (a_i)_k / prod_j (b_j)_k * z^k / k!
//
// The sum runs over k = 0..K, where K is the index just before a numerator
// Pochhammer first vanishes, or term_cap, whichever comes first.  term_cap is
// the largest term index summed: term_cap = 1 keeps the k = 0 and k = 1 terms.
// Either a numerator parameter must be a nonpositive integer or term_cap must
// be set; otherwise the series does not terminate and evaluation refuses.
struct HypergeometricSpec {
  static constexpr int kUncapped = std::numeric_limits<int>::max();

  std::vector<double> numerator_params;
  std::vector<double> denominator_params;
  double argument = 1.0;
  int term_cap = kUncapped;
};

// Evaluates the finite sum by the term-ratio recurrence
//   term_{k+1} = term_k * prod(a_i + k) / prod(b_j + k) * z / (k + 1).
// A numerator factor that vanishes ends the series; a denominator factor that
// vanishes at an index actually reached raises InvalidSeries.  Parameters in
// this problem family are exact integers or half-integers, so "vanishes" means
// within 1e-12 of zero.
double hyp_terminating(const HypergeometricSpec& spec);

}  // namespace xxchain::specfun
