#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xxchain/errors.hpp"
#include "xxchain/hahn_m1.hpp"
#include "xxchain/orthopoly.hpp"

namespace xxchain::chain {

enum class Family { AsymmetricDualM1Hahn, SymmetricDualM1Hahn, Custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // ParseError

// What to build: one of the two analytic families (N odd, eta > -1/2, xi
// derived) or explicit couplings/fields.
struct ChainSpec {
  Family family = Family::Custom;
  int N = 0;
  double eta = 0.0;
  double xi = 0.0;
  std::vector<double> custom_J;
  std::vector<double> custom_B;

  static ChainSpec asymmetric(int N, double eta);  // xi = eta + 1
  static ChainSpec symmetric(int N, double eta);   // xi = eta
  static ChainSpec custom(std::vector<double> J, std::vector<double> B);
};

// One-excitation Hamiltonian: symmetric tridiagonal with diagonal B (N+1
// entries) and strictly positive off-diagonal J (N entries, J[i] couples
// sites i and i+1).  Immutable after build; shareable across threads.
struct JacobiOperator {
  std::vector<double> B;
  std::vector<double> J;
  Family family = Family::Custom;
  double eta = 0.0;
  double xi = 0.0;

  int num_sites() const { return static_cast<int>(B.size()); }
  int order() const { return static_cast<int>(B.size()) - 1; }  // N

  // Monic view: b = B, u = J^2.
  orthopoly::MonicRecurrence monic() const;

  // Family parameters when the chain is one of the analytic families.
  std::optional<hahn_m1::DualM1HahnParams> family_params() const;
};

JacobiOperator build(const ChainSpec& spec);  // InvalidSpec

// Both reflection identities J_n = J_{N-n+1} and B_n = B_{N-n} within tol.
bool is_mirror_symmetric(const JacobiOperator& op, double tol);

// max over n = 1..(N-1)/2 of the relative defect of
// u_{2n-1} u_{2n} = u_{N-2n+1} u_{N-2n}; InvalidSpec for even N.
double u_product_identity_residual(const JacobiOperator& op);

// Chain file (JSON, UTF-8): {"n_sites": int, "J": [...], "B": [...],
// "family": ..., "eta": ..., "xi": ...} with family/eta/xi optional on read.
// Round-trips are lossless (shortest round-trip float serialization).
std::string to_json(const JacobiOperator& op);
JacobiOperator from_json(const std::string& text);  // ParseError / InvalidSpec
void save(const JacobiOperator& op, const std::string& path);
JacobiOperator load(const std::string& path);

}  // namespace xxchain::chain
