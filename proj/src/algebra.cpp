#include "qaffine/algebra.hpp"

#include <algorithm>

namespace qaffine {

std::string render(const GradedWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += " ";
    switch (g.kind) {
      case GenKind::E: out += "e_" + std::to_string(g.index); break;
      case GenKind::F: out += "f_" + std::to_string(g.index); break;
      case GenKind::K: out += "k_" + std::to_string(g.index); break;
      case GenKind::KInv: out += "k_" + std::to_string(g.index) + "^-1"; break;
      case GenKind::S: out += "S_" + std::to_string(g.index); break;
      case GenKind::C: out += "C_" + std::to_string(g.index); break;
      case GenKind::D: out += "d"; break;
    }
  }
  return out;
}

void AlgElement::add(const GradedWord& w, const Scalar& s) {
  if (s.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  for (const auto& [w, s] : o.terms_) add(w, s);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  for (const auto& [w, s] : o.terms_) add(w, -s);
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  AlgElement out;
  for (const auto& [wa, sa] : a.terms_)
    for (const auto& [wb, sb] : b.terms_) {
      GradedWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, sa * sb);
    }
  return out;
}

AlgElement AlgElement::scaled(const Scalar& s) const {
  AlgElement out;
  if (s.is_zero()) return out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * s);
  return out;
}

std::string render(const AlgElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [w, s] : x.terms()) {
    if (!out.empty()) out += "  +  ";
    out += "(" + render(s) + ") " + render(w);
  }
  return out;
}

int symbol_parity(const AlgebraData& data, const GenSymbol& g) {
  switch (g.kind) {
    case GenKind::E:
    case GenKind::F: return data.parity_of_node(g.index);
    default: return 0;
  }
}

int word_parity(const AlgebraData& data, const GradedWord& w) {
  int p = 0;
  for (const auto& g : w) p ^= symbol_parity(data, g);
  return p;
}

Weight word_weight(const AlgebraData& data, const GradedWord& w) {
  Weight wt = data.zero_weight();
  for (const auto& g : w) {
    if (g.kind == GenKind::E)
      wt += data.alpha(g.index);
    else if (g.kind == GenKind::F)
      wt -= data.alpha(g.index);
  }
  return wt;
}

namespace {

AlgElement ad_impl(const AlgebraData& data, int i, const AlgElement& x, QParam p, bool lowering) {
  GenSymbol gi = lowering ? gen_f(i) : gen_e(i);
  int pi = data.parity_of_node(i);
  AlgElement out;
  for (const auto& [w, s] : x.terms()) {
    GradedWord left{gi};
    left.insert(left.end(), w.begin(), w.end());
    out.add(left, s);

    Rat m = data.pairing(data.alpha(i), word_weight(data, w));
    Scalar factor = qpow(lowering ? Rat(-m) : m, p);
    if (pi && word_parity(data, w)) factor = -factor;
    GradedWord right = w;
    right.push_back(gi);
    out.add(right, -(s * factor));
  }
  return out;
}

}  // namespace

AlgElement ad_e(const AlgebraData& data, int i, const AlgElement& x, QParam p) {
  return ad_impl(data, i, x, p, false);
}

AlgElement ad_f(const AlgebraData& data, int i, const AlgElement& x, QParam p) {
  return ad_impl(data, i, x, p, true);
}

AlgElement serre_element(const AlgebraData& data, int i, int j, GenKind kind, QParam p) {
  if (i == j) throw std::invalid_argument("serre element needs distinct node indices");
  if (kind != GenKind::E && kind != GenKind::F)
    throw std::invalid_argument("serre element is built from e or f generators");
  long times = 1 - data.a(i, j);
  AlgElement x(GradedWord{{kind, j}});
  for (long t = 0; t < times; ++t)
    x = kind == GenKind::E ? ad_e(data, i, x, p) : ad_f(data, i, x, p);
  return x;
}

// ---- Cartan-part normal ordering ---------------------------------------------

namespace {

// S_i and C_i rewritten over k_i, k_i^{-1}.
void expand_sc_word(const AlgebraData& data, const GradedWord& w, const Scalar& coeff, QParam p,
                    AlgElement& out) {
  for (size_t pos = 0; pos < w.size(); ++pos) {
    if (w[pos].kind != GenKind::S && w[pos].kind != GenKind::C) continue;
    int i = w[pos].index;
    GradedWord plus = w, minus = w;
    plus[pos] = gen_k(i);
    minus[pos] = gen_kinv(i);
    Scalar cplus, cminus;
    if (w[pos].kind == GenKind::S) {
      Scalar denom = qpow(Rat(data.eps(i)), p) - qpow(Rat(-data.eps(i)), p);
      cplus = coeff / denom;
      cminus = -cplus;
    } else {
      cplus = coeff / Scalar(2);
      cminus = cplus;
    }
    expand_sc_word(data, plus, cplus, p, out);
    expand_sc_word(data, minus, cminus, p, out);
    return;
  }
  out.add(w, coeff);
}

}  // namespace

AlgElement k_normal_form(const AlgebraData& data, const AlgElement& x, QParam p) {
  AlgElement expanded;
  for (const auto& [w, s] : x.terms()) expand_sc_word(data, w, s, p, expanded);

  AlgElement out;
  for (const auto& [w, s] : expanded.terms()) {
    GradedWord ef;
    std::vector<long> kexp(static_cast<size_t>(data.node_count()), 0);
    Scalar factor(1);
    for (const auto& g : w) {
      switch (g.kind) {
        case GenKind::K: ++kexp[static_cast<size_t>(g.index)]; break;
        case GenKind::KInv: --kexp[static_cast<size_t>(g.index)]; break;
        case GenKind::E:
        case GenKind::F: {
          // every pending k_i^{m} hops over this symbol
          Rat exponent(0);
          for (int i = 0; i < data.node_count(); ++i)
            if (kexp[static_cast<size_t>(i)] != 0)
              exponent += Rat(kexp[static_cast<size_t>(i)]) *
                          data.pairing(data.alpha(i), data.alpha(g.index));
          if (g.kind == GenKind::F) exponent = -exponent;
          factor *= qpow(exponent, p);
          ef.push_back(g);
          break;
        }
        case GenKind::D: throw std::invalid_argument("k_normal_form does not order d");
        default: throw std::logic_error("unexpanded S/C symbol");
      }
    }
    GradedWord canon = ef;
    for (int i = 0; i < data.node_count(); ++i) {
      long m = kexp[static_cast<size_t>(i)];
      for (long t = 0; t < m; ++t) canon.push_back(gen_k(i));
      for (long t = 0; t < -m; ++t) canon.push_back(gen_kinv(i));
    }
    out.add(canon, s * factor);
  }
  return out;
}

// ---- presentation checks -------------------------------------------------------

namespace {

AlgElement single(GenSymbol g) { return AlgElement(GradedWord{g}); }

void check_zero(const AlgebraData& data, std::string label, const AlgElement& lhs,
                std::vector<RelationCheck>& out) {
  AlgElement nf = k_normal_form(data, lhs);
  out.push_back({std::move(label), nf.is_zero(), nf.is_zero() ? "" : render(nf)});
}

}  // namespace

std::vector<RelationCheck> verify_sc_presentation(const AlgebraData& data) {
  std::vector<RelationCheck> out;
  int nodes = data.node_count();
  for (int i = 0; i < nodes; ++i) {
    Scalar sinh_ti = qsinh(Rat(data.eps(i)));
    // C_i^2 - S_i^2 sinh^2(t_i) = 1
    AlgElement circle = single(gen_c(i)) * single(gen_c(i)) -
                        (single(gen_s(i)) * single(gen_s(i))).scaled(sinh_ti * sinh_ti) -
                        AlgElement(GradedWord{});
    check_zero(data, "circle(" + std::to_string(i) + ")", circle, out);

    for (int j = 0; j < nodes; ++j) {
      std::string ij = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      check_zero(data, "SC_commute" + ij,
                 single(gen_c(i)) * single(gen_s(j)) - single(gen_s(j)) * single(gen_c(i)), out);

      Rat m = data.pairing(data.alpha(i), data.alpha(j));
      Scalar ch = qcosh(m), sh = qsinh(m);
      AlgElement ej = single(gen_e(j)), fj = single(gen_f(j));
      AlgElement Ci = single(gen_c(i)), Si = single(gen_s(i));

      check_zero(data, "C_e" + ij,
                 Ci * ej - (ej * Ci).scaled(ch) - (ej * Si).scaled(sinh_ti * sh), out);
      check_zero(data, "S_e" + ij,
                 Si * ej - (ej * Si).scaled(ch) - (ej * Ci).scaled(sh / sinh_ti), out);
      check_zero(data, "C_f" + ij,
                 Ci * fj - (fj * Ci).scaled(ch) + (fj * Si).scaled(sinh_ti * sh), out);
      check_zero(data, "S_f" + ij,
                 Si * fj - (fj * Si).scaled(ch) + (fj * Ci).scaled(sh / sinh_ti), out);
    }
  }
  return out;
}

std::vector<std::pair<std::vector<int>, Scalar>> as_index_words(const AlgElement& x, GenKind kind) {
  std::vector<std::pair<std::vector<int>, Scalar>> out;
  for (const auto& [w, s] : x.terms()) {
    std::vector<int> idx;
    for (const auto& g : w) {
      if (g.kind != kind) throw std::invalid_argument("mixed word in as_index_words");
      idx.push_back(g.index);
    }
    out.emplace_back(std::move(idx), s);
  }
  return out;
}

}  // namespace qaffine
