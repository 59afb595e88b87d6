#pragma once

#include <complex>
#include <span>
#include <vector>

#include "xxchain/errors.hpp"

namespace xxchain::orthopoly {

// Monic three-term recurrence
//
//   x P_n(x) = P_{n+1}(x) + b_n P_n(x) + u_n P_{n-1}(x)
//
// for a chain of size = N+1 sites: b holds b_0..b_N and u holds u_1..u_N
// (u[i] = u_{i+1} = J_{i+1}^2, all strictly positive).
struct MonicRecurrence {
  std::vector<double> b;
  std::vector<double> u;

  int num_sites() const { return static_cast<int>(b.size()); }
  int order() const { return static_cast<int>(b.size()) - 1; }  // N
  void validate() const;                                        // InvalidParams
};

// Function values sampled on a strictly increasing grid.
struct GridFunction {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
};

// P_n(x) by upward recurrence from P_0 = 1, P_1 = x - b_0.  n may reach N+1,
// which yields the characteristic polynomial (x - x_0)...(x - x_N).
double eval_monic(const MonicRecurrence& rec, int n, double x);

// Orthonormal chi_n(x), evaluated by its own recurrence
//   chi_{n+1} = ((x - b_n) chi_n - J_n chi_{n-1}) / J_{n+1},  chi_0 = 1,
// never as P_n / sqrt(h_n): h_n overflows near N ~ 35 while chi stays
// O(1)-scaled on the spectrum.
double eval_orthonormal(const MonicRecurrence& rec, int n, double x);

// All of chi_0(x)..chi_N(x) from one recurrence pass.
std::vector<double> orthonormal_values(const MonicRecurrence& rec, double x);

// h_n = u_1 u_2 ... u_n (h_0 = 1), accumulated in log space and exponentiated.
std::vector<double> norm_products(const MonicRecurrence& rec);

// log h_n, for callers that need the products without the exponentiation.
std::vector<double> log_norm_products(const MonicRecurrence& rec);

// Discrete orthogonality weights from the characteristic polynomial,
//
//   w_s = h_N / (P_N(x_s) P'_{N+1}(x_s)),
//
// with P'_{N+1}(x_s) formed as the product over root gaps.  The grid must
// consist of the roots of P_{N+1}: NotAGrid if any residual |P_{N+1}(x_s)|
// exceeds 1e-6 * prod_{r != s} |x_s - x_r|, NegativeWeight if any w_s <= 0.
std::vector<double> weights_from_characteristic(const MonicRecurrence& rec,
                                                std::span<const double> grid);

// N-th order divided difference sum_s f(x_s) / P'_{N+1}(x_s).  Annihilates
// polynomials of degree < N and maps x^N to 1.
std::complex<double> divided_difference(const GridFunction& f);

}  // namespace xxchain::orthopoly
