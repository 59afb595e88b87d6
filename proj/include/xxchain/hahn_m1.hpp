#pragma once

#include <vector>

#include "xxchain/errors.hpp"
#include "xxchain/orthopoly.hpp"

namespace xxchain::hahn_m1 {

// Parameter set of the dual -1 Hahn family: xi, eta > -1/2 and N odd.
struct DualM1HahnParams {
  double xi = 0.0;
  double eta = 0.0;
  int N = 0;

  void validate() const;  // InvalidParams
  double delta() const { return 0.5 * (xi + eta + 1.0); }
  bool is_shifted_pair() const;  // xi = eta + 1 (asymmetric chain)
  bool is_equal_pair() const;    // xi = eta     (mirror-symmetric chain)
};

// [m]_mu = m + (1 - (-1)^m) mu: m for even m, m + 2 mu for odd m.
double bracket(int m, double mu);

// |v - round(v)| <= 1e-9; parameters arrive as user-typed decimals.
bool is_integer_parameter(double v);

// Monic recurrence coefficients: b_n = (-1)^{n+1} 2 (xi - eta)  (N odd) and
// u_n = 4 [n]_xi [N-n+1]_eta.
orthopoly::MonicRecurrence recurrence_coeffs(const DualM1HahnParams& p);

// Closed-form P_n(x; xi, eta, N) via the terminating 3F2 branches (even and
// odd n).  Must match eval_monic of recurrence_coeffs.
double explicit_eval(const DualM1HahnParams& p, int n, double x);

// Orthogonality grid y_s = (-1)^s (2s + 2 xi + 2 eta + 1) + 1, natural s order.
std::vector<double> grid(const DualM1HahnParams& p);

// Strictly increasing spectrum; same set as grid().  Requires xi = eta + 1
// (two linear sublattices with step 4 around a centre gap) or xi = eta (the
// mirror-symmetric variant).
std::vector<double> ordered_spectrum(const DualM1HahnParams& p);

// chi_{N-1}(x) for xi = eta + 1: the sign-prefixed Gauss series
//   (-1)^{(N-1)/2} 2F1(delta + x/4, delta - x/4; (2 eta + 3)/2; 1)
// truncated after (N-1)/2 terms.  On the ordered spectrum this is +/-1:
// (-1)^s on the lower half and (-1)^{s+1} on the upper half.
double chi_last_minus_one(const DualM1HahnParams& p, double x);

// Closed-form weights (natural grid s order) and monic norms nu_n, plus the
// permutation into sorted-spectrum order: sorted position t corresponds to
// grid index grid_to_sorted[t].  These closed forms are validated, not
// trusted: tests accept them only where they reproduce
// weights_from_characteristic and the u_n norm ratios.
struct WeightsAndNorms {
  std::vector<double> weights;
  std::vector<double> norms;
  std::vector<int> grid_to_sorted;
};
WeightsAndNorms appendix_weights_and_norms(const DualM1HahnParams& p);

}  // namespace xxchain::hahn_m1
