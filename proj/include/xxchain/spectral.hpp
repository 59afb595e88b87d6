#pragma once

#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/errors.hpp"

namespace xxchain::spectral {

struct EigenDecomposition {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // [s][site], orthonormal
};

enum class Mode { Numeric, AnalyticGrid };

// Full spectral description of a chain: ordered eigenvalues x_s, positive
// weights w_s summing to one, and chi[n][s] = chi_n(x_s) with the sign
// convention chi_0 = +1 (which fixes every column).  The eigenvector of x_s
// has components sqrt(w_s) chi_n(x_s).
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
  std::vector<std::vector<double>> chi;

  int num_sites() const { return static_cast<int>(eigenvalues.size()); }
  void validate() const;  // ordering, positivity, unit weight sum
};

// Self-contained implicit-shift QL for the symmetric tridiagonal operator.
// Deterministic (same input bits give same output bits); eigenvalues
// ascending; eigenvector sign fixed so the first nonzero component is
// positive.  ConvergenceFailure on iteration overrun or if two eigenvalues
// are closer than 1e-12 * ||J||_inf, which valid input cannot produce.
EigenDecomposition eig_tridiagonal(const chain::JacobiOperator& op);

// Numeric mode: x_s and w_s = v_s[0]^2 from eig_tridiagonal, chi from the
// eigenvector components.  AnalyticGrid mode (family chains only): x_s from
// the closed-form spectrum, w_s from the characteristic polynomial, chi by
// recurrence.  The two modes agree elementwise to 1e-8.
SpectralData spectral_data(const chain::JacobiOperator& op, Mode mode);

}  // namespace xxchain::spectral
