#include "xxchain/hahn_m1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xxchain/specfun.hpp"

namespace xxchain::hahn_m1 {

namespace {

using specfun::hyp_terminating;
using specfun::HypergeometricSpec;
using specfun::pochhammer;

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= static_cast<double>(j);
  return f;
}

// 16^n is a power of two, hence exact in binary floating point.
double pow16(int n) { return std::pow(16.0, n); }

constexpr double kPairTol = 1e-12;

}  // namespace

void DualM1HahnParams::validate() const {
  if (N < 1 || N % 2 == 0)
    throw InvalidParams("dual -1 Hahn: N must be an odd positive integer, got " +
                        std::to_string(N));
  if (!(xi > -0.5) || !(eta > -0.5))
    throw InvalidParams("dual -1 Hahn: parameters must satisfy xi, eta > -1/2");
}

bool DualM1HahnParams::is_shifted_pair() const {
  return std::abs(xi - (eta + 1.0)) <= kPairTol * std::max(1.0, std::abs(xi));
}

bool DualM1HahnParams::is_equal_pair() const {
  return std::abs(xi - eta) <= kPairTol * std::max(1.0, std::abs(xi));
}

double bracket(int m, double mu) {
  return static_cast<double>(m) + (m % 2 != 0 ? 2.0 * mu : 0.0);
}

bool is_integer_parameter(double v) {
  return std::abs(v - std::round(v)) <= 1e-9;
}

orthopoly::MonicRecurrence recurrence_coeffs(const DualM1HahnParams& p) {
  p.validate();
  orthopoly::MonicRecurrence rec;
  rec.b.resize(p.N + 1);
  rec.u.resize(p.N);
  for (int n = 0; n <= p.N; ++n) {
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    rec.b[n] = sign * 2.0 * (p.xi - p.eta);
  }
  for (int n = 1; n <= p.N; ++n)
    rec.u[n - 1] = 4.0 * bracket(n, p.xi) * bracket(p.N - n + 1, p.eta);
  return rec;
}

double explicit_eval(const DualM1HahnParams& p, int n, double x) {
  p.validate();
  if (n < 0 || n > p.N)
    throw IndexOutOfRange("explicit_eval: n must lie in 0..N, got " +
                          std::to_string(n));
  const double delta = p.delta();
  const double half_1mN = 0.5 * (1.0 - static_cast<double>(p.N));
  HypergeometricSpec f;
  f.numerator_params = {0.0, delta + x / 4.0, delta - x / 4.0};
  f.argument = 1.0;
  if (n % 2 == 0) {
    const int m = n / 2;
    f.numerator_params[0] = -static_cast<double>(m);
    f.denominator_params = {half_1mN, 0.5 * (2.0 * p.xi + 1.0)};
    const double prefactor = pow16(m) * pochhammer(half_1mN, m) *
                             pochhammer(0.5 * (2.0 * p.xi + 1.0), m);
    return prefactor * hyp_terminating(f);
  }
  const int m = (n - 1) / 2;
  f.numerator_params[0] = -static_cast<double>(m);
  f.denominator_params = {half_1mN, 0.5 * (2.0 * p.xi + 3.0)};
  const double prefactor = pow16(m) * pochhammer(half_1mN, m) *
                           pochhammer(0.5 * (2.0 * p.xi + 3.0), m);
  return prefactor * (x + 2.0 * p.xi - 2.0 * p.eta) * hyp_terminating(f);
}

std::vector<double> grid(const DualM1HahnParams& p) {
  p.validate();
  std::vector<double> y(p.N + 1);
  for (int s = 0; s <= p.N; ++s) {
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    y[s] = sign * (2.0 * s + 2.0 * p.xi + 2.0 * p.eta + 1.0) + 1.0;
  }
  return y;
}

std::vector<double> ordered_spectrum(const DualM1HahnParams& p) {
  p.validate();
  std::vector<double> x(p.N + 1);
  const int half = (p.N - 1) / 2;
  if (p.is_shifted_pair()) {
    for (int s = 0; s <= half; ++s)
      x[s] = -4.0 * p.eta + 4.0 * s - 2.0 * p.N - 2.0;
    for (int s = half + 1; s <= p.N; ++s)
      x[s] = 4.0 * p.eta + 4.0 * s - 2.0 * p.N + 2.0;
    return x;
  }
  if (p.is_equal_pair()) {
    for (int s = 0; s <= half; ++s) x[s] = -4.0 * p.xi + 4.0 * s - 2.0 * p.N;
    for (int s = half + 1; s <= p.N; ++s)
      x[s] = 4.0 * p.xi + 4.0 * s - 2.0 * p.N;
    return x;
  }
  throw InvalidParams(
      "ordered_spectrum: closed form requires xi = eta + 1 or xi = eta");
}

double chi_last_minus_one(const DualM1HahnParams& p, double x) {
  p.validate();
  if (!p.is_shifted_pair())
    throw InvalidParams("chi_last_minus_one: requires xi = eta + 1");
  const double delta = p.eta + 1.0;
  HypergeometricSpec f;
  f.numerator_params = {delta + x / 4.0, delta - x / 4.0};
  f.denominator_params = {0.5 * (2.0 * p.eta + 3.0)};
  f.argument = 1.0;
  f.term_cap = (p.N - 1) / 2;
  const double sign = ((p.N - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * hyp_terminating(f);
}

WeightsAndNorms appendix_weights_and_norms(const DualM1HahnParams& p) {
  p.validate();
  const double xi = p.xi;
  const double eta = p.eta;
  const int N = p.N;
  const double half_1mN = 0.5 * (1.0 - static_cast<double>(N));

  const double k_const = pochhammer(eta + 0.5, (N + 1) / 2) /
                         pochhammer(eta + xi + 1.0, (N + 1) / 2);

  WeightsAndNorms out;
  out.weights.resize(N + 1);
  for (int s = 0; s <= N; ++s) {
    if (s % 2 == 0) {
      const int h = s / 2;
      const double sign = (h % 2 == 0) ? 1.0 : -1.0;
      out.weights[s] = sign * k_const * pochhammer(half_1mN, h) *
                       pochhammer(xi + 0.5, h) *
                       pochhammer(eta + xi + 1.0, h) /
                       (factorial(h) * pochhammer(eta + 0.5, h) *
                        pochhammer(0.5 * (N + 3) + eta + xi, h));
    } else {
      const int h = (s - 1) / 2;
      const double sign = (h % 2 == 0) ? 1.0 : -1.0;
      out.weights[s] = sign * k_const * pochhammer(half_1mN, h) *
                       pochhammer(xi + 0.5, h + 1) *
                       pochhammer(eta + xi + 1.0, h) /
                       (factorial(h) * pochhammer(eta + 0.5, h + 1) *
                        pochhammer(0.5 * (N + 3) + eta + xi, h));
    }
  }

  out.norms.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    if (n % 2 == 0) {
      const int h = n / 2;
      out.norms[n] = pow16(n) * factorial(h) * pochhammer(half_1mN, h) *
                     pochhammer(xi + 0.5, h) *
                     pochhammer(-0.5 * N - eta, h);
    } else {
      const int h = (n - 1) / 2;
      out.norms[n] = -pow16(n) * factorial(h) * pochhammer(half_1mN, h) *
                     pochhammer(xi + 0.5, h + 1) *
                     pochhammer(-0.5 * N - eta, h + 1);
    }
  }

  // Permutation from sorted-spectrum positions to natural grid indices; the
  // grid alternates in sign while the spectrum is reported ordered.
  const std::vector<double> y = grid(p);
  out.grid_to_sorted.resize(N + 1);
  std::iota(out.grid_to_sorted.begin(), out.grid_to_sorted.end(), 0);
  std::sort(out.grid_to_sorted.begin(), out.grid_to_sorted.end(),
            [&y](int a, int b) { return y[a] < y[b]; });
  return out;
}

}  // namespace xxchain::hahn_m1
