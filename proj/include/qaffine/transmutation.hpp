#pragma once

#include <string>
#include <vector>

#include "qaffine/algebra.hpp"
#include "qaffine/cartan.hpp"
#include "qaffine/report.hpp"
#include "qaffine/verma.hpp"

namespace qaffine {

// Sign twist turning an integrable module of the even partner algebra into a
// module of the superalgebra. On a partner weight vector w of weight omega,
//
//   d    acts as  D
//   k_i  acts as  (-1)^{(alpha_i, omega)}              K_i
//   e_i  acts as  (-1)^{(e_signs[i], omega + alpha_i)} E_i
//   f_i  acts as  (-1)^{(f_signs[i], omega + alpha_i)} F_i
//
// with f_signs[i] = e_signs[i] + alpha_i always. The sign exponents must be
// integers; a fractional pairing is an error, never rounded.
struct TwistSpec {
  std::vector<Weight> e_signs;
  std::vector<Weight> f_signs;
  std::string provenance;  // "shipped" or "discovered"
};

// The tail-sum vectors for the odd-B series: with beta_i = alpha_i + ... +
// alpha_n (and beta_{n+1} = 0), node i carries e vector beta_{i+1} -
// delta_{i0} beta_1 and f vector beta_i - delta_{i0} beta_1. Throws
// std::domain_error for algebras outside that series and std::logic_error if
// the vectors fail the parity constraints.
TwistSpec shipped_twist(const AlgebraData& data);

// Parity constraints equivalent to every defining relation carrying over to
// the twisted action, for all highest weights at once:
//
//   f_signs[i] = e_signs[i] + alpha_i                      (exactly)
//   (e_i, alpha_i) == eps_i + [i odd]                      (mod 2)
//   (e_i, alpha_j) + (e_j, alpha_i)
//       == [i odd][j odd] + (alpha_i, alpha_j)             (mod 2), i != j
//
// The mixed e-f relations and both Serre families impose the same off-diagonal
// condition, which is why one line covers them. Returns a description of the
// first violated constraint, or an empty string.
std::string twist_constraint_violation(const AlgebraData& data, const TwistSpec& t);

// Solve the parity constraints with root-lattice vectors: tries the tail-sum
// display first and falls back to F2 elimination on the pairing parities.
// Deterministic; throws std::domain_error when no solution exists.
TwistSpec discover_twist(const AlgebraData& data);

// shipped_twist for the odd-B series, discover_twist otherwise.
TwistSpec twist_for(const AlgebraData& data);

// Deterministic corruption for negative controls: adds alpha_1 + ... +
// alpha_n to node 0's vectors, which for the odd-B series exactly removes the
// delta_{i0} correction of the shipped display.
TwistSpec mutate_twist(const AlgebraData& data, TwistSpec t);

// An integrable highest-weight module of the superalgebra realized on the
// module of its transmutation partner with the same labels. The partner
// module runs in the Generic realization (its parameter is v^2); the twisted
// action satisfies the super relations with parameter -v^2, i.e. in the
// MinusGeneric realization.
class TwistedModule {
 public:
  // Requires labels integrable for the superalgebra (integrality alone is not
  // enough: odd-node labels must be even, or the sign exponents fail to be
  // integral further down the module). Throws std::domain_error otherwise,
  // and for algebras without a partner.
  TwistedModule(const AlgebraData& super_data, const std::vector<Rat>& labels, TwistSpec spec);

  const AlgebraData& super_data() const { return super_; }
  const AlgebraData& partner_data() const { return partner_data_; }
  const InducedModule& partner() const { return partner_; }
  const Weight& lambda() const { return lambda_; }
  const TwistSpec& spec() const { return spec_; }

  // Twisted action of a super generator; S and C act diagonally through the
  // twisted k's.
  ModuleVector act_symbol(const GenSymbol& g, const ModuleVector& w) const;
  ModuleVector act_word(const GradedWord& x, const ModuleVector& w) const;
  ModuleVector act_element(const AlgElement& x, const ModuleVector& w) const;

  // Checks, in order: the highest-weight property (e_i kill the top vector,
  // k_i eigenvalue equals the super q power with its predicted sign), every
  // defining relation on the weight basis to the given depth, and equality of
  // the twisted character with the directly built super module's character.
  // Gram ranks on both sides are computed in the Generic realization; the
  // substitution v -> iv is a ring automorphism, so ranks are insensitive to
  // which realization carries them.
  VerificationReport verify(long depth) const;

 private:
  int sign_parity(const Weight& u, const Weight& omega) const;
  int f_word_sign(const FWord& w, Weight omega) const;

  AlgebraData super_;
  AlgebraData partner_data_;
  Weight lambda_;
  TwistSpec spec_;
  InducedModule partner_;
};

// The q = -1 specialization of the S/C presentation coefficients, relation by
// relation: each printed coefficient of the specialized table is compared
// with the limit of the generic coefficient, evaluated at v = i after exact
// reduction (the reduced fractions are pole-free there for integer pairings).
// The S-relation coefficient disagrees with its printed value at nodes with
// eps_i = 2, where the honest limit is (-1)^{m + eps_i} m / eps_i, not
// (-1)^{m + eps_i} m; the report records both values and fails on such nodes.
VerificationReport specialized_relations_report(const AlgebraData& data);

}  // namespace qaffine
