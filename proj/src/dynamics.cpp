#include "xxchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace xxchain::dynamics {

namespace {

using cd = std::complex<double>;

void require_site(int site, int n_sites, const char* what) {
  if (site < 0 || site >= n_sites)
    throw InvalidSite(std::string(what) + " site " + std::to_string(site) +
                      " out of range 0.." + std::to_string(n_sites - 1));
}

std::vector<cd> weighted_phases(const spectral::SpectralData& sd, double t) {
  std::vector<cd> c(sd.num_sites());
  for (int s = 0; s < sd.num_sites(); ++s)
    c[s] = sd.weights[s] * std::exp(cd(0.0, -t * sd.eigenvalues[s]));
  return c;
}

}  // namespace

double AmplitudeMatrix::unitarity_residual() const {
  const int n = num_sites();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd acc = 0.0;
      for (int k = 0; k < n; ++k) acc += entries[i][k] * std::conj(entries[j][k]);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

std::complex<double> amplitude_entry(const spectral::SpectralData& sd, int l,
                                     int m, double t) {
  require_site(l, sd.num_sites(), "amplitude");
  require_site(m, sd.num_sites(), "amplitude");
  cd acc = 0.0;
  for (int s = 0; s < sd.num_sites(); ++s)
    acc += sd.weights[s] * std::exp(cd(0.0, -t * sd.eigenvalues[s])) *
           sd.chi[l][s] * sd.chi[m][s];
  return acc;
}

AmplitudeMatrix amplitude_matrix(const spectral::SpectralData& sd, double t) {
  const int n = sd.num_sites();
  AmplitudeMatrix am;
  am.time = t;
  am.entries.assign(n, std::vector<cd>(n));
  const std::vector<cd> c = weighted_phases(sd, t);
  for (int l = 0; l < n; ++l) {
    for (int m = l; m < n; ++m) {
      cd acc = 0.0;
      for (int s = 0; s < n; ++s) acc += c[s] * sd.chi[l][s] * sd.chi[m][s];
      am.entries[l][m] = acc;
      am.entries[m][l] = acc;  // A is symmetric, bit-exactly
    }
  }
  return am;
}

std::complex<double> amplitude_via_divided_difference(
    const spectral::SpectralData& sd, const orthopoly::MonicRecurrence& rec,
    int l, int m, double T) {
  const int n = sd.num_sites();
  const int N = n - 1;
  require_site(l, n, "amplitude");
  require_site(m, n, "amplitude");

  // phi is measured from the (0, N-1) amplitude, and the transfer premise
  // exp(-i x_s T) = exp(i phi) chi_{N-1}(x_s) is checked on every grid point.
  const cd a0 = amplitude_entry(sd, 0, N - 1, T);
  const cd phase = std::exp(cd(0.0, std::arg(a0)));
  for (int s = 0; s < n; ++s) {
    const cd lhs = std::exp(cd(0.0, -T * sd.eigenvalues[s]));
    const cd rhs = phase * sd.chi[N - 1][s];
    if (std::abs(lhs - rhs) > 1e-8)
      throw PremiseViolated(
          "amplitude_via_divided_difference: exp(-i x_s T) does not match "
          "exp(i phi) chi_{N-1}(x_s) at s = " + std::to_string(s));
  }

  // (x - b_N) chi_l chi_m has degree 1 + l + m < N, which the N-th divided
  // difference annihilates identically.
  if (l + m < N - 1) return cd(0.0, 0.0);

  const double log_h = orthopoly::log_norm_products(rec)[N - 1];
  const double bN = rec.b[N];
  cd acc = 0.0;
  for (int s = 0; s < n; ++s) {
    double log_gap = 0.0;
    double sign = 1.0;
    for (int r = 0; r < n; ++r) {
      if (r == s) continue;
      const double gap = sd.eigenvalues[s] - sd.eigenvalues[r];
      log_gap += std::log(std::abs(gap));
      if (gap < 0.0) sign = -sign;
    }
    // sqrt(h_{N-1}) / P'_{N+1}(x_s) combined in log space; each resulting
    // term is bounded by w_s |chi_l chi_m| <= 1 even though both factors are
    // astronomically large on their own.
    const double scale = sign * std::exp(0.5 * log_h - log_gap);
    acc += scale * (sd.eigenvalues[s] - bN) * sd.chi[l][s] * sd.chi[m][s];
  }
  return phase * acc;
}

std::vector<PstEvent> detect_pst(const AmplitudeMatrix& am, double tol) {
  std::vector<PstEvent> events;
  const int n = am.num_sites();
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      const cd a = am.entries[l][m];
      if (std::abs(a) >= 1.0 - tol)
        events.push_back({l, m, std::norm(a), std::arg(a)});
    }
  }
  return events;
}

FrEvent detect_fr(const AmplitudeMatrix& am, int source, double tol) {
  require_site(source, am.num_sites(), "revival source");
  if (source % 2 == 0)
    throw InvalidSite("revival source must be an odd site, got " +
                      std::to_string(source));
  FrEvent event;
  event.source = source;
  for (int m = 0; m < am.num_sites(); ++m) {
    const double prob = std::norm(am.entries[m][source]);
    if (prob > tol) {
      event.support.push_back(m);
      event.probabilities.push_back(prob);
    }
  }
  return event;
}

double verify_return(const spectral::SpectralData& sd, double T,
                     double* phase_out) {
  const AmplitudeMatrix am = amplitude_matrix(sd, 2.0 * T);
  const double psi = std::arg(am.entries[0][0]);
  if (phase_out) *phase_out = psi;
  const cd expected = std::exp(cd(0.0, psi));
  double worst = 0.0;
  for (int l = 0; l < am.num_sites(); ++l) {
    for (int m = 0; m < am.num_sites(); ++m) {
      const cd delta =
          am.entries[l][m] - (l == m ? expected : cd(0.0, 0.0));
      worst = std::max(worst, std::abs(delta));
    }
  }
  return worst;
}

std::vector<std::pair<double, double>> fidelity_sweep(
    const spectral::SpectralData& sd, int source, int target,
    std::span<const double> t_grid) {
  require_site(source, sd.num_sites(), "sweep source");
  require_site(target, sd.num_sites(), "sweep target");
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid)
    out.emplace_back(t, std::norm(amplitude_entry(sd, target, source, t)));
  return out;
}

bool pst_time_condition(const hahn_m1::DualM1HahnParams& p, double T) {
  if (!hahn_m1::is_integer_parameter(p.eta)) return false;
  const double ratio = T / (std::numbers::pi / 4.0);
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, std::abs(ratio))) return false;
  return std::abs(std::fmod(k, 2.0)) == 1.0;
}

std::vector<std::pair<int, int>> expected_even_pst_pairs(int N) {
  std::vector<std::pair<int, int>> pairs;
  for (int src = 0; src <= N - 1; src += 2) pairs.emplace_back(src, N - 1 - src);
  return pairs;
}

TransportReport verify_transport(const chain::JacobiOperator& op, double T,
                                 const Tolerances& tol) {
  TransportReport report;
  report.op = op;
  report.time = T;
  report.tol = tol;

  const spectral::Mode mode = op.family == chain::Family::Custom
                                  ? spectral::Mode::Numeric
                                  : spectral::Mode::AnalyticGrid;
  const spectral::SpectralData sd = spectral_data(op, mode);
  const AmplitudeMatrix am = amplitude_matrix(sd, T);
  const int N = op.order();

  report.pst_pairs = detect_pst(am, tol.pst);
  for (int source = 1; source <= N; source += 2)
    report.fr_events.push_back(detect_fr(am, source, tol.fr_support));
  report.return_residual = verify_return(sd, T, &report.return_phase);
  report.return_ok = report.return_residual <= tol.ret;

  if (op.family == chain::Family::SymmetricDualM1Hahn) {
    // The mirror-symmetric family claims end-to-end transfer; odd-site
    // revival events are reported but carry no verdict of their own.
    report.pst_ok = std::abs(am.entries[0][N]) >= 1.0 - tol.pst;
    report.fr_ok = true;
    return report;
  }

  report.pst_ok = true;
  for (const auto& [src, dst] : expected_even_pst_pairs(N))
    report.pst_ok =
        report.pst_ok && std::abs(am.entries[src][dst]) >= 1.0 - tol.pst;

  // Odd sources must revive only on the odd sites the degree argument
  // allows (m + source >= N - 1), with the support carrying all the weight.
  report.fr_ok = true;
  for (const FrEvent& event : report.fr_events) {
    double mass = 0.0;
    for (std::size_t i = 0; i < event.support.size(); ++i) {
      const int m = event.support[i];
      if (m % 2 == 0 || m + event.source < N - 1) report.fr_ok = false;
      mass += event.probabilities[i];
    }
    if (std::abs(mass - 1.0) > 1e-9) report.fr_ok = false;
  }
  return report;
}

}  // namespace xxchain::dynamics
