#pragma once

#include <map>
#include <random>
#include <vector>

#include "qaffine/cartan.hpp"
#include "qaffine/scalar.hpp"

namespace qaffine::testing {

// Independent q -> 1 oracle for the higher-order defining relations: plain
// super-commutator ladder (ad g_i) x = g_i x - (-1)^{[g_i][x]} x g_i acting
// on integer-coefficient formal words. The deformed coefficients must
// specialize to these.
inline std::map<std::vector<int>, Rat> classical_serre(const AlgebraData& a, int i, int j) {
  std::map<std::vector<int>, Rat> x{{{j}, Rat(1)}};
  long times = 1 - a.a(i, j);
  for (long t = 0; t < times; ++t) {
    std::map<std::vector<int>, Rat> next;
    auto bump = [&next](const std::vector<int>& w, const Rat& c) {
      Rat& slot = next[w];
      slot += c;
      if (slot == 0) next.erase(w);
    };
    for (const auto& [w, c] : x) {
      std::vector<int> left{i};
      left.insert(left.end(), w.begin(), w.end());
      bump(left, c);
      int pw = 0;
      for (int s : w) pw ^= a.parity_of_node(s);
      Rat sgn = (a.parity_of_node(i) && pw) ? Rat(-1) : Rat(1);
      std::vector<int> right = w;
      right.push_back(i);
      bump(right, Rat(-sgn * c));
    }
    x = std::move(next);
  }
  return x;
}

// Small random scalars for algebraic property checks. Coefficients stay
// tiny so canonicalization failures show up as readable counterexamples.
class ScalarGen {
 public:
  explicit ScalarGen(unsigned seed) : rng_(seed) {}

  Rat small_rat() {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return rat(num(rng_), den(rng_));
  }

  GaussRat coeff(bool allow_imaginary = true) {
    std::uniform_int_distribution<int> imag(0, 3);
    if (allow_imaginary && imag(rng_) == 0) return GaussRat(small_rat(), small_rat());
    return GaussRat(small_rat());
  }

  LaurentPoly poly(bool allow_imaginary = true) {
    std::uniform_int_distribution<int> nterms(0, 4), exp(-4, 4);
    LaurentPoly p;
    int n = nterms(rng_);
    for (int i = 0; i < n; ++i) p.add_term(exp(rng_), coeff(allow_imaginary));
    return p;
  }

  LaurentPoly nonzero_poly(bool allow_imaginary = true) {
    for (;;) {
      LaurentPoly p = poly(allow_imaginary);
      if (!p.is_zero()) return p;
    }
  }

  Scalar scalar(bool allow_imaginary = true) {
    return Scalar(poly(allow_imaginary), nonzero_poly(allow_imaginary));
  }

  Scalar nonzero_scalar(bool allow_imaginary = true) {
    for (;;) {
      Scalar s = scalar(allow_imaginary);
      if (!s.is_zero()) return s;
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace qaffine::testing
