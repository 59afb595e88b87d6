#include "xxchain/orthopoly.hpp"

#include <cmath>
#include <string>

#include "dd.hpp"

namespace xxchain::orthopoly {

namespace {

void require_grid_sorted(std::span<const double> grid) {
  for (std::size_t s = 1; s < grid.size(); ++s)
    if (!(grid[s - 1] < grid[s]))
      throw NotAGrid("grid must be strictly increasing");
}

// P'_{N+1}(x_s) as the product over root gaps; the grid is known analytically
// for the model families, so the product form is the backward-stable one.
double derivative_at_root(std::span<const double> grid, std::size_t s) {
  double p = 1.0;
  for (std::size_t r = 0; r < grid.size(); ++r)
    if (r != s) p *= grid[s] - grid[r];
  return p;
}

}  // namespace

void MonicRecurrence::validate() const {
  if (b.size() < 2)
    throw InvalidParams("MonicRecurrence: need at least two sites");
  if (u.size() + 1 != b.size())
    throw InvalidParams("MonicRecurrence: u must have one entry fewer than b");
  for (double v : u)
    if (!(v > 0.0))
      throw InvalidParams("MonicRecurrence: u_n must be strictly positive");
}

double eval_monic(const MonicRecurrence& rec, int n, double x) {
  const int N = rec.order();
  if (n < 0 || n > N + 1)
    throw IndexOutOfRange("eval_monic: n must lie in 0..N+1, got " +
                          std::to_string(n));
  // Compensated like the orthonormal recurrence; the weights formed from
  // P_N values would otherwise inherit ~1e-9 relative error near N = 31.
  using detail::dd;
  dd prev{0.0, 0.0};  // P_{-1}
  dd cur{1.0, 0.0};   // P_0
  for (int k = 0; k < n; ++k) {
    const dd xb = detail::two_sum(x, -rec.b[k]);
    dd next = detail::mul(xb, cur);
    if (k >= 1) next = detail::sub(next, detail::mul(prev, rec.u[k - 1]));
    prev = cur;
    cur = next;
  }
  return detail::collapse(cur);
}

std::vector<double> orthonormal_values(const MonicRecurrence& rec, double x) {
  // The recurrence runs in compensated double-double: rounding injected
  // early gets amplified by the growing second solution, and near N ~ 31 a
  // plain double pass leaves chi_{N-1} only ~1e-8 true at the grid points.
  using detail::dd;
  std::vector<double> out(rec.num_sites());
  dd prev{0.0, 0.0};  // chi_{-1}
  dd cur{1.0, 0.0};   // chi_0
  dd j_k{0.0, 0.0};   // J_0 = 0
  out[0] = 1.0;
  for (int k = 0; k + 1 < rec.num_sites(); ++k) {
    const dd j_next = detail::sqrt(dd{rec.u[k], 0.0});
    const dd xb = detail::two_sum(x, -rec.b[k]);
    const dd next = detail::div(
        detail::sub(detail::mul(xb, cur), detail::mul(j_k, prev)), j_next);
    prev = cur;
    cur = next;
    j_k = j_next;
    out[k + 1] = detail::collapse(cur);
  }
  return out;
}

double eval_orthonormal(const MonicRecurrence& rec, int n, double x) {
  const int N = rec.order();
  if (n < 0 || n > N)
    throw IndexOutOfRange("eval_orthonormal: n must lie in 0..N, got " +
                          std::to_string(n));
  return orthonormal_values(rec, x)[n];
}

std::vector<double> log_norm_products(const MonicRecurrence& rec) {
  std::vector<double> lh(rec.b.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < rec.u.size(); ++i) {
    acc += std::log(rec.u[i]);
    lh[i + 1] = acc;
  }
  return lh;
}

std::vector<double> norm_products(const MonicRecurrence& rec) {
  std::vector<double> h = log_norm_products(rec);
  for (double& v : h) v = std::exp(v);
  return h;
}

std::vector<double> weights_from_characteristic(const MonicRecurrence& rec,
                                                std::span<const double> grid) {
  rec.validate();
  const int N = rec.order();
  if (static_cast<int>(grid.size()) != N + 1)
    throw NotAGrid("weights_from_characteristic: grid size must equal N+1");
  require_grid_sorted(grid);

  const double log_hN = log_norm_products(rec).back();
  std::vector<double> w(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    double log_gap = 0.0;
    double sign = 1.0;
    for (std::size_t r = 0; r < grid.size(); ++r) {
      if (r == s) continue;
      const double gap = grid[s] - grid[r];
      log_gap += std::log(std::abs(gap));
      if (gap < 0.0) sign = -sign;
    }
    const double residual = eval_monic(rec, N + 1, grid[s]);
    if (std::abs(residual) > 1e-6 * std::exp(log_gap))
      throw NotAGrid(
          "weights_from_characteristic: grid point " + std::to_string(s) +
          " is not a root of the characteristic polynomial");
    const double pN = eval_monic(rec, N, grid[s]);
    if (pN < 0.0) sign = -sign;
    w[s] = sign * std::exp(log_hN - std::log(std::abs(pN)) - log_gap);
    if (!(w[s] > 0.0))
      throw NegativeWeight("weights_from_characteristic: w_" +
                           std::to_string(s) + " is not positive");
  }
  return w;
}

std::complex<double> divided_difference(const GridFunction& f) {
  if (f.grid.size() != f.values.size())
    throw NotAGrid("divided_difference: grid/value size mismatch");
  if (f.grid.empty()) throw NotAGrid("divided_difference: empty grid");
  require_grid_sorted(f.grid);
  std::complex<double> acc = 0.0;
  for (std::size_t s = 0; s < f.grid.size(); ++s)
    acc += f.values[s] / derivative_at_root(f.grid, s);
  return acc;
}

}  // namespace xxchain::orthopoly
