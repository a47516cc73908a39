#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaffine/algebra.hpp"
#include "qaffine/cartan.hpp"
#include "qaffine/report.hpp"
#include "qaffine/scalar.hpp"

namespace qaffine {

// Index sequence (i_1, ..., i_p) standing for f_{i_1} f_{i_2} ... f_{i_p}
// applied to the highest-weight vector; the empty word is that vector
// itself. These span the induced module, with no relations imposed: the
// irreducible quotient is only ever touched through Gram ranks and radical
// membership, never through a chosen basis of it.
using FWord = std::vector<int>;

// How many times each simple root has been subtracted from the highest
// weight; the key identifying one weight space.
using Content = std::vector<long>;

struct ResourceLimit : std::runtime_error {
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// Finite linear combination of f-words with scalar coefficients.
class ModuleVector {
 public:
  ModuleVector() = default;

  const std::map<FWord, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const FWord& w, const Scalar& c);
  Scalar coeff(const FWord& w) const;

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  ModuleVector scaled(const Scalar& c) const;
  bool operator==(const ModuleVector& o) const { return terms_ == o.terms_; }

 private:
  std::map<FWord, Scalar> terms_;
};

ModuleVector highest_vector();
ModuleVector single_word(FWord w);
std::string render(const ModuleVector& v);

struct GramData {
  Content content;
  std::vector<FWord> basis;  // every word of this content, lexicographic
  std::vector<std::vector<Scalar>> matrix;
  long rank = 0;
};

// Gram ranks are pure functions of (algebra, highest weight, realization,
// content), so implementations may persist them across processes. Keys
// already carry an algorithm-version stamp.
class RankCache {
 public:
  virtual ~RankCache() = default;
  virtual std::optional<long> lookup(const std::string& key) = 0;
  virtual void store(const std::string& key, long rank) = 0;
};

struct CharacterEntry {
  Content alpha_coords;
  long multiplicity = 0;
};

struct CharacterTable {
  std::vector<CharacterEntry> entries;  // graded lexicographic order
  bool partial = false;  // a weight space hit the basis-size limit
};

// Highest-weight module spanned by f-words, with the generator actions
// given by explicit coefficient formulas:
//   f_i prepends; k_i and d are diagonal; e_i deletes one matching letter
//   at a time, paying a sign for each odd letter jumped over and a
//   q-bracket of the pairing between the weight below the deletion point
//   and alpha_i. S_i and C_i act diagonally through the same pairings.
// The contravariant form <.,.> pairs f-words by running the reversed word
// back up with e's; its radical at each weight is the maximal proper
// submodule there, so rank(Gram) is the irreducible multiplicity.
class InducedModule {
 public:
  InducedModule(AlgebraData data, Weight lambda, QParam p = QParam::Generic);

  const AlgebraData& data() const { return data_; }
  const Weight& lambda() const { return lambda_; }
  QParam param() const { return param_; }

  ModuleVector act_f(int i, const ModuleVector& w) const;
  ModuleVector act_e(int i, const ModuleVector& w) const;
  ModuleVector act_k(int i, const ModuleVector& w) const;
  ModuleVector act_kinv(int i, const ModuleVector& w) const;
  ModuleVector act_d(const ModuleVector& w) const;
  ModuleVector act_s(int i, const ModuleVector& w) const;
  ModuleVector act_c(int i, const ModuleVector& w) const;
  ModuleVector act_symbol(const GenSymbol& g, const ModuleVector& w) const;
  // Words act right to left: the last symbol is applied first.
  ModuleVector act_word(const GradedWord& x, const ModuleVector& w) const;
  ModuleVector act_element(const AlgElement& x, const ModuleVector& w) const;

  Content content_of(const FWord& w) const;
  Weight weight_of(const FWord& w) const;
  Weight weight_of_content(const Content& c) const;
  int parity_of(const FWord& w) const;
  // (lambda - sum c_r alpha_r, alpha_i)
  Rat pairing_with_alpha(const Content& c, int i) const;

  // Contravariant form: <f_w v, f_w' v> = coefficient of v in the result of
  // the reversed e-word of w acting on w'. <v, v> = 1.
  Scalar pair(const FWord& a, const FWord& b) const;
  Scalar pair(const ModuleVector& x, const ModuleVector& y) const;

  // All f-words of the given content, lexicographically ascending. Throws
  // ResourceLimit when the count exceeds the configured bound.
  std::vector<FWord> weight_basis(const Content& c) const;
  long basis_size(const Content& c) const;
  // All contents with |c| <= depth in graded lexicographic order.
  std::vector<Content> contents_up_to(long depth) const;

  const GramData& gram(const Content& c) const;
  // rank of gram(c) = dim of the weight space in the irreducible quotient;
  // served from the in-memory or attached persistent cache when possible.
  long multiplicity(const Content& c) const;
  bool in_radical(const ModuleVector& w) const;

  CharacterTable character(long depth) const;

  // Least m <= m_max with f_i^m w inside the radical, or nullopt. m = 0
  // means w itself already vanishes in the quotient.
  std::optional<long> nilpotency_index(int i, const ModuleVector& w, long m_max) const;

  // Every defining relation as an operator identity on all basis words to
  // the given depth; the higher f-relations are tested modulo the radical
  // through the adjoint e-word trick, everything else must vanish exactly.
  VerificationReport relations_report(long depth) const;

  // Compares generic-v multiplicities with ranks of the same Gram matrices
  // evaluated at v = 1, i.e. with the classical enveloping-algebra action.
  VerificationReport classical_action_check(long depth) const;

  void set_basis_limit(std::size_t n) { basis_limit_ = n; }
  std::size_t basis_limit() const { return basis_limit_; }
  // Sample points for the evaluation cross-check of every exact rank; the
  // defaults stay clear of small cyclotomic denominators.
  void set_sample_points(std::vector<Rat> pts) { sample_points_ = std::move(pts); }
  void attach_rank_cache(RankCache* cache) { rank_cache_ = cache; }  // not owned

 private:
  Scalar qb(const Rat& a, long eps) const;
  void add_e_action(int i, const FWord& w, const Scalar& coeff, ModuleVector& out) const;
  std::string cache_key(const Content& c) const;

  AlgebraData data_;
  Weight lambda_;
  QParam param_;
  std::vector<Rat> lam_alpha_;                 // (lambda, alpha_i)
  std::vector<std::vector<Rat>> alpha_alpha_;  // (alpha_j, alpha_i)
  std::size_t basis_limit_ = 200000;
  std::vector<Rat> sample_points_;
  RankCache* rank_cache_ = nullptr;

  mutable std::map<Content, GramData> grams_;
  mutable std::map<Content, long> ranks_;
  mutable std::map<std::pair<Rat, long>, Scalar> qbracket_memo_;
};

// Fraction-free rank of a matrix of scalars: rows are cleared to Laurent
// polynomials, then two-step elimination with full pivoting and exact
// divisions. Works for any rectangular shape.
long exact_rank(const std::vector<std::vector<Scalar>>& m);
// Rank after substituting v = v0; throws PoleError if any entry has a pole.
long evaluated_rank(const std::vector<std::vector<Scalar>>& m, const GaussRat& v0);

// Simple tensors u (x) v of f-words from two modules over the same algebra.
using FPair = std::pair<FWord, FWord>;

class TensorVector {
 public:
  TensorVector() = default;

  const std::map<FPair, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const FPair& w, const Scalar& c);

  TensorVector& operator+=(const TensorVector& o);
  TensorVector& operator-=(const TensorVector& o);
  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
  TensorVector scaled(const Scalar& c) const;
  bool operator==(const TensorVector& o) const { return terms_ == o.terms_; }

 private:
  std::map<FPair, Scalar> terms_;
};

// Action on a tensor product through the co-multiplication
//   e_i -> e_i (x) k_i + 1 (x) e_i,
//   f_i -> f_i (x) 1 + k_i^{-1} (x) f_i,
//   k_i -> k_i (x) k_i, d -> d (x) 1 + 1 (x) d,
// with the graded rule (x (x) y)(u (x) v) = (-1)^{[y][u]} xu (x) yv. The
// inverse k sits on the left leg of the f-coproduct; putting it on the
// right leg breaks the mixed e-f relation already on rank-one examples
// (see the README note).
class TensorModule {
 public:
  TensorModule(const InducedModule& left, const InducedModule& right);

  const InducedModule& left() const { return l_; }
  const InducedModule& right() const { return r_; }

  TensorVector act_symbol(const GenSymbol& g, const TensorVector& w) const;
  TensorVector act_word(const GradedWord& x, const TensorVector& w) const;
  TensorVector act_element(const AlgElement& x, const TensorVector& w) const;

  // Defining relations on every basis tensor with total depth <= depth.
  // Non-Serre relations and the e-Serre family must vanish exactly; the
  // f-Serre family is tested modulo radical (x) module + module (x) radical,
  // blockwise through the factor Gram matrices.
  VerificationReport relations_report(long depth) const;

 private:
  const InducedModule& l_;
  const InducedModule& r_;
};

}  // namespace qaffine
