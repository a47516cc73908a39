#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaffine/rational.hpp"

namespace qaffine {

// A weight written over the basis {lambda0, alpha_0, ..., alpha_n}, so the
// coordinate vector has n+2 entries and index i+1 carries alpha_i. The
// bilinear form on this space is the business of AlgebraData.
struct Weight {
  std::vector<Rat> c;

  Weight() = default;
  explicit Weight(int nodes) : c(static_cast<size_t>(nodes) + 1, Rat(0)) {}

  Rat& lambda0_coeff() { return c[0]; }
  const Rat& lambda0_coeff() const { return c[0]; }
  Rat& alpha_coeff(int i) { return c[static_cast<size_t>(i) + 1]; }
  const Rat& alpha_coeff(int i) const { return c[static_cast<size_t>(i) + 1]; }

  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return !(*this == o); }

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  Weight scaled(const Rat& t) const;
};

std::string to_string(const Weight& w);

// Defining data of one algebra in the class this library handles: an
// affine-type symmetrizable Cartan matrix, a set of odd simple roots, the
// marks of the null root, and the symmetrizing factors d_i fixed by the
// normalization that odd simple roots have squared length 1.
class AlgebraData {
 public:
  static AlgebraData from_parts(std::string name, std::vector<std::vector<long>> matrix,
                                std::vector<int> theta, std::optional<std::vector<long>> marks,
                                std::vector<Rat> d);
  static AlgebraData from_json(const std::string& text);
  std::string to_json() const;

  const std::string& name() const { return name_; }
  // Highest simple-root index; generators are indexed 0..rank().
  int rank() const { return static_cast<int>(matrix_.size()) - 1; }
  int node_count() const { return static_cast<int>(matrix_.size()); }
  const std::vector<std::vector<long>>& matrix() const { return matrix_; }
  long a(int i, int j) const { return matrix_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  const std::vector<int>& theta() const { return theta_; }
  bool is_odd(int i) const;
  int parity_of_node(int i) const { return is_odd(i) ? 1 : 0; }
  const std::vector<long>& marks() const { return marks_; }
  const std::vector<Rat>& d() const { return d_; }
  // Normalizer exponent of the [e_i, f_i] denominator: 2 for squared
  // length 4, else 1.
  long eps(int i) const { return d_[static_cast<size_t>(i)] == 2 ? 2 : 1; }

  Weight zero_weight() const { return Weight(node_count()); }
  Weight lambda0() const;
  Weight alpha(int i) const;

  Rat pairing(const Weight& x, const Weight& y) const;
  // 2(w, alpha_i) / (alpha_i, alpha_i)
  Rat dynkin_label(const Weight& w, int i) const;
  std::vector<Rat> dynkin_labels(const Weight& w) const;

  // Integrability test for a highest weight: every label a nonnegative
  // integer, and even at the odd nodes. On failure *why names the first
  // offending node.
  bool integrable_dominant(const Weight& w, std::string* why = nullptr) const;

  // The unique weight with the given labels whose alpha_0 coordinate is 0;
  // the lambda0 coordinate is forced by the labels through the null root.
  Weight weight_from_labels(const std::vector<Rat>& labels) const;
  Rat lambda0_coefficient(const std::vector<Rat>& labels) const;

 private:
  AlgebraData() = default;
  void finalize();  // validates and fills the derived tables

  std::string name_;
  std::vector<std::vector<long>> matrix_;
  std::vector<int> theta_;
  std::vector<long> marks_;
  std::vector<Rat> d_;
  std::vector<std::vector<Rat>> gram_;  // form on {lambda0, alpha_0..alpha_n}
};

// Built-in algebras. Names follow family_rank conventions, e.g. "B1_0_3" for
// the third member of the odd-B series and "A2_6" for its transmutation
// partner; catalog_names() lists them all.
std::vector<std::string> catalog_names();
AlgebraData catalog(const std::string& name);
bool catalog_has(const std::string& name);

// The even-root algebra paired with a catalog superalgebra (same Cartan
// matrix, marks and symmetrizers, empty odd set). Throws std::domain_error
// for algebras with no partner in the correspondence, notably the A4 series.
std::string partner_name(const std::string& super_name);
AlgebraData partner(const AlgebraData& data);

// Primitive positive integer null vector of an affine Cartan matrix.
// Throws std::invalid_argument if the kernel is not one-dimensional or has
// no positive representative.
std::vector<long> primitive_null_marks(const std::vector<std::vector<long>>& matrix);

}  // namespace qaffine
