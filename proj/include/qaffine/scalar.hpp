#pragma once

#include <map>
#include <string>

#include "qaffine/rational.hpp"

namespace qaffine {

// Everything downstream works over one coefficient ring: rational functions
// in a formal variable v with q = v^2, so that q^{1/2} = v and all the
// half-integral powers of q that the rank-one odd root forces are honest
// monomials. Coefficients are Gaussian rationals; see rational.hpp.

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse Laurent polynomial in v over Q(i). Zero coefficients are never
// stored, so the default-constructed empty map is the zero polynomial.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const GaussRat& c) {
    if (!c.is_zero()) terms_[0] = c;
  }

  static LaurentPoly monomial(const GaussRat& c, int exp) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_[exp] = c;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, GaussRat>& terms() const { return terms_; }

  int min_exp() const;  // both require a nonzero polynomial
  int max_exp() const;
  GaussRat coeff(int exp) const;
  int term_count() const { return static_cast<int>(terms_.size()); }

  void add_term(int exp, const GaussRat& c);

  LaurentPoly shifted(int k) const;  // multiply by v^k
  LaurentPoly scaled(const GaussRat& c) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Throws PoleError when v0 = 0 meets a negative exponent.
  GaussRat evaluate(const GaussRat& v0) const;

 private:
  std::map<int, GaussRat> terms_;
};

// Exact division a / b, used by the fraction-free elimination in the Gram
// rank computation where divisibility is guaranteed. Throws std::logic_error
// on a nonzero remainder since that would mean corrupted invariants.
LaurentPoly laurent_divide_exact(const LaurentPoly& a, const LaurentPoly& b);

// Monic gcd of the underlying ordinary polynomials (v^k units stripped).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Quotient num/den of Laurent polynomials, kept in a canonical form:
//   - zero is 0/1;
//   - den is an ordinary polynomial with constant coefficient exactly 1;
//   - gcd(num stripped of its v^k unit, den) = 1.
// Canonical form makes operator== meaningful, which the verification
// checks rely on (they compare computed and expected coefficients).
class Scalar {
 public:
  Scalar() : num_(), den_(LaurentPoly(GaussRat(1))) {}
  Scalar(int n) : Scalar(GaussRat(Rat(n))) {}
  Scalar(const Rat& r) : Scalar(GaussRat(r)) {}
  Scalar(const GaussRat& c) : num_(LaurentPoly(c)), den_(LaurentPoly(GaussRat(1))) {}
  Scalar(LaurentPoly num, LaurentPoly den);

  static Scalar v_power(int k) { return Scalar(LaurentPoly::monomial(GaussRat(1), k), LaurentPoly(GaussRat(1))); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;

  // Substitute a concrete value for v. Throws PoleError if the denominator
  // vanishes there; the message names the offending denominator.
  GaussRat evaluate(const GaussRat& v0) const;

  // The q -> 1 specialization, i.e. v = 1. For every coefficient the
  // algebra produces this is finite (the simple zero of the denominator at
  // v = 1, when present, is cancelled by canonicalization).
  GaussRat classical_limit() const { return evaluate(GaussRat(1)); }

 private:
  void canonicalize();
  LaurentPoly num_, den_;
};

// Which square root of q^2's deformation parameter the expression is built
// over: Generic means q = v^2 itself, MinusGeneric means q is replaced by
// -v^2 with q^{1/2} = i*v. The twisted-module checks run the same formulas
// in the MinusGeneric realization.
enum class QParam { Generic, MinusGeneric };

// q^a for half-integral a (2a must be an integer; throws otherwise).
Scalar qpow(const Rat& a, QParam p = QParam::Generic);

// (q^a - q^{-a}) / (q^eps - q^{-eps}); eps is 1 or 2 in practice but any
// nonzero half-integer is accepted.
Scalar qbracket(const Rat& a, const Rat& eps, QParam p = QParam::Generic);

// (q^m + q^{-m})/2 and (q^m - q^{-m})/2: the coefficient functions in the
// hyperbolic form of the Cartan-generator relations.
Scalar qcosh(const Rat& m, QParam p = QParam::Generic);
Scalar qsinh(const Rat& m, QParam p = QParam::Generic);

// Compact textual form, e.g. "(v)/(v^2+1)". See README for the grammar.
std::string render(const Scalar& s);
std::string render(const LaurentPoly& p);
Scalar parse_scalar(const std::string& text);

}  // namespace qaffine
