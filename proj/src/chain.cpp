#include "xxchain/chain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace xxchain::chain {

namespace {

using ordered_json = nlohmann::ordered_json;

// A family-tagged file whose arrays were edited by hand no longer describes
// that family; analytic fast paths would silently go wrong, so reject.
void check_family_consistency(const JacobiOperator& op) {
  if (op.family == Family::Custom) return;
  const auto params = op.family_params();
  const auto rec = hahn_m1::recurrence_coeffs(*params);
  for (int n = 0; n <= op.order(); ++n) {
    if (std::abs(op.B[n] - rec.b[n]) > 1e-9 * std::max(1.0, std::abs(rec.b[n])))
      throw ParseError("chain file: B is inconsistent with the family tag "
                       "(edit the arrays only on custom chains)");
  }
  for (int n = 1; n <= op.order(); ++n) {
    const double j = std::sqrt(rec.u[n - 1]);
    if (std::abs(op.J[n - 1] - j) > 1e-9 * std::max(1.0, j))
      throw ParseError("chain file: J is inconsistent with the family tag "
                       "(edit the arrays only on custom chains)");
  }
}

std::vector<double> as_double_array(const ordered_json& j, const char* field) {
  if (!j.is_array())
    throw ParseError(std::string("chain file: \"") + field +
                     "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number())
      throw ParseError(std::string("chain file: \"") + field +
                       "\" must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::AsymmetricDualM1Hahn: return "asym-dualm1hahn";
    case Family::SymmetricDualM1Hahn: return "sym-dualm1hahn";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  if (name == "asym-dualm1hahn") return Family::AsymmetricDualM1Hahn;
  if (name == "sym-dualm1hahn") return Family::SymmetricDualM1Hahn;
  if (name == "custom") return Family::Custom;
  throw ParseError("unknown chain family \"" + name + "\"");
}

ChainSpec ChainSpec::asymmetric(int N, double eta) {
  ChainSpec s;
  s.family = Family::AsymmetricDualM1Hahn;
  s.N = N;
  s.eta = eta;
  s.xi = eta + 1.0;
  return s;
}

ChainSpec ChainSpec::symmetric(int N, double eta) {
  ChainSpec s;
  s.family = Family::SymmetricDualM1Hahn;
  s.N = N;
  s.eta = eta;
  s.xi = eta;
  return s;
}

ChainSpec ChainSpec::custom(std::vector<double> J, std::vector<double> B) {
  ChainSpec s;
  s.family = Family::Custom;
  s.N = static_cast<int>(B.size()) - 1;
  s.custom_J = std::move(J);
  s.custom_B = std::move(B);
  return s;
}

orthopoly::MonicRecurrence JacobiOperator::monic() const {
  orthopoly::MonicRecurrence rec;
  rec.b = B;
  rec.u.resize(J.size());
  for (std::size_t i = 0; i < J.size(); ++i) rec.u[i] = J[i] * J[i];
  return rec;
}

std::optional<hahn_m1::DualM1HahnParams> JacobiOperator::family_params() const {
  if (family == Family::Custom) return std::nullopt;
  return hahn_m1::DualM1HahnParams{xi, eta, order()};
}

JacobiOperator build(const ChainSpec& spec) {
  JacobiOperator op;
  op.family = spec.family;
  if (spec.family == Family::Custom) {
    if (spec.custom_B.size() < 2 ||
        spec.custom_J.size() + 1 != spec.custom_B.size())
      throw InvalidSpec("custom chain: need N+1 fields and N couplings");
    for (double j : spec.custom_J)
      if (!(j > 0.0))
        throw InvalidSpec("custom chain: couplings must be strictly positive");
    op.J = spec.custom_J;
    op.B = spec.custom_B;
    return op;
  }

  hahn_m1::DualM1HahnParams p{spec.xi, spec.eta, spec.N};
  try {
    p.validate();
  } catch (const InvalidParams& e) {
    throw InvalidSpec(e.what());
  }
  const auto rec = hahn_m1::recurrence_coeffs(p);
  op.eta = spec.eta;
  op.xi = spec.xi;
  op.B = rec.b;
  op.J.resize(rec.u.size());
  for (std::size_t i = 0; i < rec.u.size(); ++i) op.J[i] = std::sqrt(rec.u[i]);
  return op;
}

bool is_mirror_symmetric(const JacobiOperator& op, double tol) {
  const int N = op.order();
  for (int n = 1; n <= N; ++n)
    if (std::abs(op.J[n - 1] - op.J[N - n]) > tol) return false;  // J_n vs J_{N-n+1}
  for (int n = 0; n <= N; ++n)
    if (std::abs(op.B[n] - op.B[N - n]) > tol) return false;
  return true;
}

double u_product_identity_residual(const JacobiOperator& op) {
  const int N = op.order();
  if (N % 2 == 0)
    throw InvalidSpec("u_product_identity_residual: N must be odd");
  const auto rec = op.monic();
  auto u = [&rec](int n) { return rec.u[n - 1]; };  // 1-based
  double worst = 0.0;
  for (int n = 1; n <= (N - 1) / 2; ++n) {
    const double lhs = u(2 * n - 1) * u(2 * n);
    const double rhs = u(N - 2 * n + 1) * u(N - 2 * n);
    worst = std::max(worst, std::abs(lhs - rhs) / lhs);
  }
  return worst;
}

std::string to_json(const JacobiOperator& op) {
  ordered_json j;
  j["n_sites"] = op.num_sites();
  j["J"] = op.J;
  j["B"] = op.B;
  j["family"] = family_name(op.family);
  if (op.family != Family::Custom) {
    j["eta"] = op.eta;
    j["xi"] = op.xi;
  }
  return j.dump(2);
}

JacobiOperator from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("chain file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("chain file: top level must be an object");
  for (const char* field : {"n_sites", "J", "B"})
    if (!j.contains(field))
      throw ParseError(std::string("chain file: missing field \"") + field +
                       "\"");
  if (!j["n_sites"].is_number_integer())
    throw ParseError("chain file: \"n_sites\" must be an integer");

  JacobiOperator op;
  const int n_sites = j["n_sites"].get<int>();
  op.J = as_double_array(j["J"], "J");
  op.B = as_double_array(j["B"], "B");
  if (op.B.size() != op.J.size() + 1)
    throw ParseError("chain file: length(B) must equal length(J) + 1");
  if (static_cast<int>(op.B.size()) != n_sites)
    throw ParseError("chain file: \"n_sites\" does not match the array sizes");
  if (n_sites < 2) throw ParseError("chain file: need at least two sites");
  for (double v : op.J)
    if (!(v > 0.0))
      throw InvalidSpec("chain file: couplings must be strictly positive");

  if (j.contains("family"))
    op.family = family_from_name(j["family"].get<std::string>());
  if (op.family != Family::Custom) {
    for (const char* field : {"eta", "xi"})
      if (!j.contains(field) || !j[field].is_number())
        throw ParseError(
            std::string("chain file: family-tagged chains need numeric \"") +
            field + "\"");
    op.eta = j["eta"].get<double>();
    op.xi = j["xi"].get<double>();
    check_family_consistency(op);
  }
  return op;
}

void save(const JacobiOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << to_json(op) << "\n";
  if (!out) throw ParseError("failed writing \"" + path + "\"");
}

JacobiOperator load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace xxchain::chain
