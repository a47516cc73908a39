#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qaffine {

// Exact rational numbers. gmpxx keeps mpq_class canonical under arithmetic;
// only the raw (num, den) constructor and string parsing need an explicit
// canonicalize(), which the helpers below take care of.
using Rat = mpq_class;

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Narrowing accessor for quantities that are integers by construction
// (pairing values scaled by 2, grading degrees, sign exponents).
inline long to_long(const Rat& r) {
  if (!is_integer(r)) throw std::domain_error("not an integer: " + r.get_str());
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer too large: " + r.get_str());
  return r.get_num().get_si();
}

inline int parity(const Rat& r) {
  long n = to_long(r);
  return static_cast<int>(((n % 2) + 2) % 2);
}

inline int parity(long n) { return static_cast<int>(((n % 2) + 2) % 2); }

// Gaussian rationals a + b*i. This is the only coefficient field we need:
// the twisted realization replaces the deformation parameter q by -q, and
// the square root picked for q^{1/2} there is i*v^... with v formal, so
// evaluation points and polynomial coefficients live in Q(i).
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(long n) : re(n), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  GaussRat operator-() const {
    Rat nr = -re, ni = -im;
    return GaussRat(nr, ni);
  }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    GaussRat c = a;
    c += b;
    return c;
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    GaussRat c = a;
    c -= b;
    return c;
  }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    Rat r = a.re * b.re - a.im * b.im;
    Rat i = a.re * b.im + a.im * b.re;
    return GaussRat(r, i);
  }

  GaussRat inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rat n = re * re + im * im;
    Rat r = re / n, i = -im / n;
    return GaussRat(r, i);
  }

  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }

  // Power of i, exponent taken mod 4.
  static GaussRat i_power(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return GaussRat(1);
      case 1: return GaussRat(Rat(0), Rat(1));
      case 2: return GaussRat(-1);
      default: return GaussRat(Rat(0), Rat(-1));
    }
  }
};

inline std::string to_string(const GaussRat& g) {
  if (g.is_real()) return g.re.get_str();
  std::string s = "(" + g.re.get_str();
  if (g.im < 0)
    s += "-" + Rat(-g.im).get_str();
  else
    s += "+" + g.im.get_str();
  return s + "*i)";
}

}  // namespace qaffine
