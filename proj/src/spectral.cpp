#include "xxchain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "xxchain/hahn_m1.hpp"
#include "xxchain/orthopoly.hpp"

namespace xxchain::spectral {

namespace {

double inf_norm(const chain::JacobiOperator& op) {
  const int n = op.num_sites();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(op.B[i]);
    if (i > 0) row += std::abs(op.J[i - 1]);
    if (i < n - 1) row += std::abs(op.J[i]);
    worst = std::max(worst, row);
  }
  return worst;
}

}  // namespace

void SpectralData::validate() const {
  const int n = num_sites();
  if (n < 2 || static_cast<int>(weights.size()) != n ||
      static_cast<int>(chi.size()) != n)
    throw InvalidSpec("SpectralData: inconsistent sizes");
  double sum = 0.0;
  for (int s = 1; s < n; ++s)
    if (!(eigenvalues[s - 1] < eigenvalues[s]))
      throw InvalidSpec("SpectralData: eigenvalues must be strictly increasing");
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidSpec("SpectralData: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidSpec("SpectralData: weights must sum to one");
}

EigenDecomposition eig_tridiagonal(const chain::JacobiOperator& op) {
  const int n = op.num_sites();
  std::vector<double> d = op.B;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = op.J[i];

  // Rotations accumulate into z; z[k][c] is component k of eigenvector c.
  std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) z[i][i] = 1.0;

  // Implicit-shift QL with deflation, the classic tql2 scheme.
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw ConvergenceFailure(
              "eig_tridiagonal: QL iteration cap exceeded at value " +
              std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&d](int a, int b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.assign(n, std::vector<double>(n));
  for (int s = 0; s < n; ++s) {
    out.eigenvalues[s] = d[order[s]];
    for (int k = 0; k < n; ++k) out.eigenvectors[s][k] = z[k][order[s]];
    // Global sign: first nonzero component positive.
    for (int k = 0; k < n; ++k) {
      if (out.eigenvectors[s][k] != 0.0) {
        if (out.eigenvectors[s][k] < 0.0)
          for (double& v : out.eigenvectors[s]) v = -v;
        break;
      }
    }
  }

  // J_i > 0 makes the spectrum simple; a numerically degenerate gap can only
  // come from invalid input, so refuse rather than orthogonalize.
  const double scale = inf_norm(op);
  for (int s = 1; s < n; ++s)
    if (out.eigenvalues[s] - out.eigenvalues[s - 1] < 1e-12 * scale)
      throw ConvergenceFailure(
          "eig_tridiagonal: eigenvalue gap below 1e-12 * ||J||; "
          "the operator is not a valid chain");
  return out;
}

SpectralData spectral_data(const chain::JacobiOperator& op, Mode mode) {
  SpectralData sd;
  const int n = op.num_sites();
  if (mode == Mode::Numeric) {
    const EigenDecomposition eig = eig_tridiagonal(op);
    sd.eigenvalues = eig.eigenvalues;
    sd.weights.resize(n);
    sd.chi.assign(n, std::vector<double>(n));
    for (int s = 0; s < n; ++s) {
      const double first = eig.eigenvectors[s][0];
      sd.weights[s] = first * first;
      for (int k = 0; k < n; ++k) sd.chi[k][s] = eig.eigenvectors[s][k] / first;
    }
  } else {
    const auto params = op.family_params();
    if (!params)
      throw InvalidSpec(
          "spectral_data: AnalyticGrid mode requires a family-tagged chain");
    sd.eigenvalues = hahn_m1::ordered_spectrum(*params);
    // Exact family coefficients, not op.monic(): squaring the rounded
    // couplings perturbs u_n by ~1e-16 relative, which the recurrence
    // amplifies to ~4e-9 in chi near N = 31.
    const auto rec = hahn_m1::recurrence_coeffs(*params);
    sd.weights = orthopoly::weights_from_characteristic(rec, sd.eigenvalues);
    sd.chi.assign(n, std::vector<double>(n));
    for (int s = 0; s < n; ++s) {
      const std::vector<double> column =
          orthopoly::orthonormal_values(rec, sd.eigenvalues[s]);
      for (int k = 0; k < n; ++k) sd.chi[k][s] = column[k];
    }
  }
  sd.validate();
  return sd;
}

}  // namespace xxchain::spectral
