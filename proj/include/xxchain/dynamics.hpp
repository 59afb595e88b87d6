#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/hahn_m1.hpp"
#include "xxchain/orthopoly.hpp"
#include "xxchain/spectral.hpp"

namespace xxchain::dynamics {

// Transition amplitudes A_{lm}(t) = <l| exp(-i t H) |m> at a fixed time,
// synthesized from the spectral data.  Unitary and symmetric (A_{lm} = A_{ml}
// holds bit-exactly by construction).
struct AmplitudeMatrix {
  double time = 0.0;
  std::vector<std::vector<std::complex<double>>> entries;

  int num_sites() const { return static_cast<int>(entries.size()); }
  double unitarity_residual() const;  // max-norm of A A^dagger - I
};

// Single entry A_{lm}(t) = sum_s w_s exp(-i t x_s) chi_l(x_s) chi_m(x_s).
std::complex<double> amplitude_entry(const spectral::SpectralData& sd, int l,
                                     int m, double t);

AmplitudeMatrix amplitude_matrix(const spectral::SpectralData& sd, double t);

// Independent route to A_{lm}(T) at a transfer time T, via the N-th divided
// difference:
//
//   A_{lm}(T) = exp(i phi) sqrt(h_{N-1}) D^N[(x - b_N) chi_l(x) chi_m(x)],
//
// valid when exp(-i x_s T) = exp(i phi) chi_{N-1}(x_s) on the whole spectrum
// (PremiseViolated otherwise, residual checked against 1e-8).  phi is
// measured from the (0, N-1) spectral amplitude, never assumed.  Returns
// exactly 0 when l + m < N - 1 by the degree argument.
std::complex<double> amplitude_via_divided_difference(
    const spectral::SpectralData& sd, const orthopoly::MonicRecurrence& rec,
    int l, int m, double T);

struct PstEvent {
  int source = 0;
  int target = 0;
  double fidelity = 0.0;  // |A|^2, the transfer probability
  double phase = 0.0;     // arg A in (-pi, pi]
};

// All ordered pairs with |A_{lm}| >= 1 - tol.
std::vector<PstEvent> detect_pst(const AmplitudeMatrix& am, double tol);

struct FrEvent {
  int source = 0;
  std::vector<int> support;            // sites with |A|^2 > tol
  std::vector<double> probabilities;   // |A|^2 on the support
};

// Fractional-revival support of an odd source site; InvalidSite otherwise.
FrEvent detect_fr(const AmplitudeMatrix& am, int source, double tol);

// max-norm of A(2T) - exp(i psi) I with psi measured from the first diagonal
// entry; psi is stored to *phase_out when given.
double verify_return(const spectral::SpectralData& sd, double T,
                     double* phase_out = nullptr);

// Time-resolved transfer probability |A_{target,source}(t)|^2.
std::vector<std::pair<double, double>> fidelity_sweep(
    const spectral::SpectralData& sd, int source, int target,
    std::span<const double> t_grid);

// True iff eta is an integer (within 1e-9) and T is an odd multiple of pi/4
// (within 1e-9 relative) -- the exact condition for transfer at T on the
// shifted-pair family.
bool pst_time_condition(const hahn_m1::DualM1HahnParams& p, double T);

struct Tolerances {
  double pst = 1e-9;         // on |A|
  double fr_support = 1e-12; // on |A|^2
  double ret = 1e-9;         // on the return residual
};

// Aggregated verdicts for one chain at one time.
struct TransportReport {
  chain::JacobiOperator op;
  double time = 0.0;
  std::vector<PstEvent> pst_pairs;
  std::vector<FrEvent> fr_events;
  double return_residual = 0.0;
  double return_phase = 0.0;
  bool pst_ok = false;
  bool fr_ok = false;
  bool return_ok = false;
  Tolerances tol;

  bool all_ok() const { return pst_ok && fr_ok && return_ok; }
};

// The transfer pairs claimed for the shifted-pair family at a transfer time:
// (2n, N-2n-1) for all 0 <= 2n <= N-1, as ordered pairs (self-pairs occur
// when 4n = N-1 and are reported as self-transfer).
std::vector<std::pair<int, int>> expected_even_pst_pairs(int N);

// Evaluates the family's claims at time T.  Asymmetric-family chains (and
// custom chains, which exist to falsify perturbed variants) are checked for
// transfer on every expected even pair, revival of each odd source confined
// to the odd sites m with m + source >= N - 1, and return at 2T.  The
// mirror-symmetric family is checked for end-to-end transfer and return.
TransportReport verify_transport(const chain::JacobiOperator& op, double T,
                                 const Tolerances& tol);

}  // namespace xxchain::dynamics
