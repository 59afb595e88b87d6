// xxchain: build engineered XX chains, inspect their spectra, evolve
// one-excitation states, and check the transport claims (even-pair transfer,
// odd-site fractional revival, perfect return) for the dual -1 Hahn families.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xxchain/chain.hpp"
#include "xxchain/dynamics.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/hahn_m1.hpp"
#include "xxchain/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace xxchain;

constexpr double kPi = std::numbers::pi;

// CSV cells use 17 significant digits, enough to round-trip any double and
// byte-deterministic for fixed input.
std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Times are accepted as plain decimals or as exact multiples of pi/4
// ("pi/4", "3*pi/4", "-5*pi/4"); transfer times are intrinsically
// pi-multiples and decimal truncation would eat tolerance budget.
double parse_time_expr(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty time expression");
  if (s == "pi/4") return kPi / 4.0;
  static const std::regex multiple(R"(^([+-]?\d+)\*pi/4$)");
  std::smatch m;
  if (std::regex_match(s, m, multiple))
    return std::stod(m[1].str()) * (kPi / 4.0);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError("cannot parse time \"" + s +
                     "\" (use a decimal or k*pi/4)");
  return v;
}

struct ChainSourceOpts {
  std::string family;
  int N = 0;
  double eta = 0.0;
  std::string input;
  CLI::Option* family_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* input_opt = nullptr;
};

void add_chain_source(CLI::App* cmd, ChainSourceOpts& src) {
  src.family_opt =
      cmd->add_option("--family", src.family,
                      "chain family: asym-dualm1hahn or sym-dualm1hahn")
          ->check(CLI::IsMember({"asym-dualm1hahn", "sym-dualm1hahn"}));
  src.n_opt = cmd->add_option("--N", src.N, "largest site index (odd)");
  src.eta_opt = cmd->add_option("--eta", src.eta, "family parameter eta");
  src.input_opt =
      cmd->add_option("--input", src.input, "read the chain from a JSON file");
}

chain::JacobiOperator resolve_chain(const ChainSourceOpts& src) {
  const bool has_family = src.family_opt->count() > 0;
  const bool has_input = src.input_opt->count() > 0;
  if (has_family == has_input)
    throw InvalidSpec(
        "need exactly one chain source: --family/--N/--eta or --input");
  if (has_input) return chain::load(src.input);
  if (src.n_opt->count() == 0 || src.eta_opt->count() == 0)
    throw InvalidSpec("--family requires --N and --eta");
  const auto family = chain::family_from_name(src.family);
  if (family == chain::Family::AsymmetricDualM1Hahn)
    return chain::build(chain::ChainSpec::asymmetric(src.N, src.eta));
  return chain::build(chain::ChainSpec::symmetric(src.N, src.eta));
}

spectral::Mode resolve_mode(const chain::JacobiOperator& op,
                            const std::string& mode) {
  if (mode == "numeric") return spectral::Mode::Numeric;
  if (mode == "analytic") return spectral::Mode::AnalyticGrid;
  return op.family == chain::Family::Custom ? spectral::Mode::Numeric
                                            : spectral::Mode::AnalyticGrid;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << text;
  if (!out) throw ParseError("failed writing \"" + path + "\"");
}

json report_to_json(const dynamics::TransportReport& r) {
  json j;
  j["chain"] = json::parse(chain::to_json(r.op));
  j["time"] = r.time;
  json pst = json::array();
  for (const auto& e : r.pst_pairs) {
    json item;
    item["source"] = e.source;
    item["target"] = e.target;
    item["fidelity"] = e.fidelity;
    item["phase"] = e.phase;
    pst.push_back(item);
  }
  j["pst"] = pst;
  json fr = json::array();
  for (const auto& e : r.fr_events) {
    json item;
    item["source"] = e.source;
    item["support"] = e.support;
    item["probabilities"] = e.probabilities;
    fr.push_back(item);
  }
  j["fr"] = fr;
  j["return_residual"] = r.return_residual;
  j["verdict"] = {{"pst", r.pst_ok}, {"fr", r.fr_ok}, {"return", r.return_ok}};
  j["tolerances"] = {{"pst", r.tol.pst},
                     {"fr_support", r.tol.fr_support},
                     {"return", r.tol.ret}};
  return j;
}

int cmd_spectrum(const chain::JacobiOperator& op, spectral::Mode mode,
                 const std::string& format, const std::string& output) {
  const auto sd = spectral_data(op, mode);
  if (format == "csv") {
    std::string text = "s,eigenvalue,weight\n";
    for (int s = 0; s < sd.num_sites(); ++s)
      text += std::to_string(s) + "," + fmt17(sd.eigenvalues[s]) + "," +
              fmt17(sd.weights[s]) + "\n";
    write_output(output, text);
    return 0;
  }
  json j;
  j["mode"] = (mode == spectral::Mode::Numeric) ? "numeric" : "analytic";
  j["n_sites"] = sd.num_sites();
  j["eigenvalues"] = sd.eigenvalues;
  j["weights"] = sd.weights;
  j["chi"] = sd.chi;
  write_output(output, j.dump(2) + "\n");
  return 0;
}

int cmd_evolve(const chain::JacobiOperator& op, spectral::Mode mode, double t,
               const std::string& format, const std::string& output) {
  const auto sd = spectral_data(op, mode);
  const auto am = dynamics::amplitude_matrix(sd, t);
  const int n = am.num_sites();
  if (format == "csv") {
    std::string text = "l,m,re,im,fidelity\n";
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m)
        text += std::to_string(l) + "," + std::to_string(m) + "," +
                fmt17(am.entries[l][m].real()) + "," +
                fmt17(am.entries[l][m].imag()) + "," +
                fmt17(std::norm(am.entries[l][m])) + "\n";
    write_output(output, text);
    return 0;
  }
  json j;
  j["time"] = t;
  j["n_sites"] = n;
  std::vector<std::vector<double>> re(n, std::vector<double>(n));
  std::vector<std::vector<double>> im(n, std::vector<double>(n));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) {
      re[l][m] = am.entries[l][m].real();
      im[l][m] = am.entries[l][m].imag();
    }
  j["re"] = re;
  j["im"] = im;
  write_output(output, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const chain::JacobiOperator& op, double t,
               const dynamics::Tolerances& tol, const std::string& output) {
  const auto report = dynamics::verify_transport(op, t, tol);
  write_output(output, report_to_json(report).dump(2) + "\n");
  return report.all_ok() ? 0 : 1;
}

int cmd_sweep(const chain::JacobiOperator& op, int source, int target,
              double tmax, int steps, const std::string& output) {
  const auto sd = spectral_data(
      op, op.family == chain::Family::Custom ? spectral::Mode::Numeric
                                             : spectral::Mode::AnalyticGrid);
  if (source < 0 || source >= sd.num_sites() || target < 0 ||
      target >= sd.num_sites())
    throw InvalidSite("sweep sites must lie in 0.." +
                      std::to_string(sd.num_sites() - 1));
  if (steps < 1) throw InvalidSpec("--steps must be at least 1");
  std::string text = "t,re,im,fidelity\n";
  for (int i = 0; i < steps; ++i) {
    const double t =
        steps == 1 ? 0.0 : tmax * static_cast<double>(i) / (steps - 1);
    const auto a = dynamics::amplitude_entry(sd, target, source, t);
    text += fmt17(t) + "," + fmt17(a.real()) + "," + fmt17(a.imag()) + "," +
            fmt17(std::norm(a)) + "\n";
  }
  write_output(output, text);
  return 0;
}

struct SelftestCase {
  chain::Family family;
  int N;
  double eta;
};

int cmd_selftest() {
  const std::vector<SelftestCase> cases = {
      {chain::Family::AsymmetricDualM1Hahn, 3, 0.0},
      {chain::Family::AsymmetricDualM1Hahn, 3, 3.0},
      {chain::Family::AsymmetricDualM1Hahn, 5, 0.5},
      {chain::Family::AsymmetricDualM1Hahn, 7, 1.0},
      {chain::Family::AsymmetricDualM1Hahn, 15, 2.0},
      {chain::Family::AsymmetricDualM1Hahn, 31, 0.0},
      {chain::Family::AsymmetricDualM1Hahn, 31, 3.0},
      {chain::Family::SymmetricDualM1Hahn, 3, 1.0},
      {chain::Family::SymmetricDualM1Hahn, 9, 1.0},
      {chain::Family::SymmetricDualM1Hahn, 15, 2.0},
  };
  constexpr double kOrthoTol = 1e-9;
  constexpr double kModeTol = 1e-8;
  constexpr double kUnitaryTol = 1e-9;

  std::printf("%-16s %4s %6s  %-9s %-9s %-9s  %s\n", "family", "N", "eta",
              "ortho", "mode", "unitary", "result");
  bool all_ok = true;
  for (const auto& c : cases) {
    const auto op = chain::build(
        c.family == chain::Family::AsymmetricDualM1Hahn
            ? chain::ChainSpec::asymmetric(c.N, c.eta)
            : chain::ChainSpec::symmetric(c.N, c.eta));
    const auto sa = spectral_data(op, spectral::Mode::AnalyticGrid);
    const auto sn = spectral_data(op, spectral::Mode::Numeric);
    const int n = sa.num_sites();

    double ortho = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        double acc = 0.0;
        for (int s = 0; s < n; ++s)
          acc += sa.weights[s] * sa.chi[a][s] * sa.chi[b][s];
        ortho = std::max(ortho, std::abs(acc - (a == b ? 1.0 : 0.0)));
      }

    double mode = 0.0;
    for (int s = 0; s < n; ++s) {
      mode = std::max(mode, std::abs(sa.eigenvalues[s] - sn.eigenvalues[s]));
      mode = std::max(mode, std::abs(sa.weights[s] - sn.weights[s]));
      for (int k = 0; k < n; ++k)
        mode = std::max(mode, std::abs(sa.chi[k][s] - sn.chi[k][s]));
    }

    double unitary = 0.0;
    for (double t : {0.37, kPi / 4.0, 2.1})
      unitary = std::max(
          unitary, dynamics::amplitude_matrix(sa, t).unitarity_residual());

    const bool ok =
        ortho <= kOrthoTol && mode <= kModeTol && unitary <= kUnitaryTol;
    all_ok = all_ok && ok;
    std::printf("%-16s %4d %6g  %-9.2e %-9.2e %-9.2e  %s\n",
                chain::family_name(op.family).c_str(), c.N, c.eta, ortho, mode,
                unitary, ok ? "PASS" : "FAIL");
  }
  std::printf("selftest: %s\n", all_ok ? "PASS" : "FAIL");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "xxchain: engineered XX spin chains with asymmetric perfect state "
      "transfer"};
  app.require_subcommand(1);

  // build
  auto* build_cmd = app.add_subcommand("build", "construct a chain file");
  ChainSourceOpts build_src;
  add_chain_source(build_cmd, build_src);
  std::string build_output;
  build_cmd->add_option("--output,-o", build_output,
                        "output path (default: stdout)");

  // spectrum
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "eigenvalues, weights and chi table");
  ChainSourceOpts spectrum_src;
  add_chain_source(spectrum_cmd, spectrum_src);
  std::string spectrum_mode = "auto";
  std::string spectrum_format = "json";
  std::string spectrum_output;
  spectrum_cmd->add_option("--mode", spectrum_mode, "numeric|analytic|auto")
      ->check(CLI::IsMember({"numeric", "analytic", "auto"}));
  spectrum_cmd->add_option("--format", spectrum_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  spectrum_cmd->add_option("--output,-o", spectrum_output, "output path");

  // evolve
  auto* evolve_cmd =
      app.add_subcommand("evolve", "amplitude matrix at a fixed time");
  ChainSourceOpts evolve_src;
  add_chain_source(evolve_cmd, evolve_src);
  std::string evolve_time = "pi/4";
  std::string evolve_mode = "auto";
  std::string evolve_format = "json";
  std::string evolve_output;
  evolve_cmd->add_option("--time", evolve_time, "time (decimal or k*pi/4)");
  evolve_cmd->add_option("--mode", evolve_mode, "numeric|analytic|auto")
      ->check(CLI::IsMember({"numeric", "analytic", "auto"}));
  evolve_cmd->add_option("--format", evolve_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  evolve_cmd->add_option("--output,-o", evolve_output, "output path");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "check the family's transport claims (exit 1 on failure)");
  ChainSourceOpts verify_src;
  add_chain_source(verify_cmd, verify_src);
  std::string verify_time = "pi/4";
  dynamics::Tolerances tol;
  std::string verify_output;
  verify_cmd->add_option("--time", verify_time, "time (decimal or k*pi/4)");
  verify_cmd->add_option("--pst-tol", tol.pst, "transfer tolerance on |A|")
      ->check(CLI::PositiveNumber);
  verify_cmd
      ->add_option("--fr-tol", tol.fr_support, "revival support threshold")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--return-tol", tol.ret, "return residual tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--output,-o", verify_output, "report path");

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "time-resolved fidelity as CSV");
  ChainSourceOpts sweep_src;
  add_chain_source(sweep_cmd, sweep_src);
  int sweep_source = 0;
  int sweep_target = 0;
  std::string sweep_tmax = "2*pi/4";
  int sweep_steps = 201;
  std::string sweep_output;
  sweep_cmd->add_option("--source", sweep_source, "initial site")->required();
  sweep_cmd->add_option("--target", sweep_target, "observed site")->required();
  sweep_cmd->add_option("--tmax", sweep_tmax, "sweep end (decimal or k*pi/4)");
  sweep_cmd->add_option("--steps", sweep_steps, "number of rows");
  sweep_cmd->add_option("--output,-o", sweep_output, "output path");

  // selftest
  app.add_subcommand("selftest",
                     "run the embedded invariant suite on fixed chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (build_cmd->parsed()) {
      const auto op = resolve_chain(build_src);
      write_output(build_output, chain::to_json(op) + "\n");
      return 0;
    }
    if (spectrum_cmd->parsed()) {
      const auto op = resolve_chain(spectrum_src);
      return cmd_spectrum(op, resolve_mode(op, spectrum_mode), spectrum_format,
                          spectrum_output);
    }
    if (evolve_cmd->parsed()) {
      const auto op = resolve_chain(evolve_src);
      return cmd_evolve(op, resolve_mode(op, evolve_mode),
                        parse_time_expr(evolve_time), evolve_format,
                        evolve_output);
    }
    if (verify_cmd->parsed()) {
      const auto op = resolve_chain(verify_src);
      return cmd_verify(op, parse_time_expr(verify_time), tol, verify_output);
    }
    if (sweep_cmd->parsed()) {
      const auto op = resolve_chain(sweep_src);
      return cmd_sweep(op, sweep_source, sweep_target,
                       parse_time_expr(sweep_tmax), sweep_steps, sweep_output);
    }
    return cmd_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
