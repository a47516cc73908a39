#include "qaffine/verma.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace qaffine {

// ---- ModuleVector -----------------------------------------------------------

void ModuleVector::add(const FWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar ModuleVector::coeff(const FWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

ModuleVector ModuleVector::scaled(const Scalar& c) const {
  ModuleVector out;
  if (c.is_zero()) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
  return out;
}

ModuleVector highest_vector() { return single_word(FWord{}); }

ModuleVector single_word(FWord w) {
  ModuleVector v;
  v.add(w, Scalar(1));
  return v;
}

std::string render(const ModuleVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : v.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << render(c) << ")*";
    if (w.empty()) {
      os << "v";
    } else {
      os << "f[";
      for (size_t s = 0; s < w.size(); ++s) os << (s ? "," : "") << w[s];
      os << "]v";
    }
  }
  return os.str();
}

// ---- InducedModule: construction and generator actions ---------------------

InducedModule::InducedModule(AlgebraData data, Weight lambda, QParam p)
    : data_(std::move(data)), lambda_(std::move(lambda)), param_(p) {
  size_t nodes = static_cast<size_t>(data_.node_count());
  if (lambda_.c.size() != nodes + 1)
    throw std::invalid_argument("highest weight has wrong coordinate count");
  lam_alpha_.resize(nodes);
  alpha_alpha_.assign(nodes, std::vector<Rat>(nodes));
  for (size_t i = 0; i < nodes; ++i) {
    lam_alpha_[i] = data_.pairing(lambda_, data_.alpha(static_cast<int>(i)));
    for (size_t j = 0; j < nodes; ++j)
      alpha_alpha_[i][j] =
          data_.pairing(data_.alpha(static_cast<int>(i)), data_.alpha(static_cast<int>(j)));
  }
  sample_points_ = {Rat(2), Rat(3), Rat(5, 2)};
}

Content InducedModule::content_of(const FWord& w) const {
  Content c(static_cast<size_t>(data_.node_count()), 0);
  for (int i : w) c[static_cast<size_t>(i)] += 1;
  return c;
}

Weight InducedModule::weight_of(const FWord& w) const { return weight_of_content(content_of(w)); }

Weight InducedModule::weight_of_content(const Content& c) const {
  Weight w = lambda_;
  for (size_t i = 0; i < c.size(); ++i)
    w -= data_.alpha(static_cast<int>(i)).scaled(Rat(c[i]));
  return w;
}

int InducedModule::parity_of(const FWord& w) const {
  int p = 0;
  for (int i : w) p ^= data_.parity_of_node(i);
  return p;
}

Rat InducedModule::pairing_with_alpha(const Content& c, int i) const {
  Rat r = lam_alpha_[static_cast<size_t>(i)];
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0) r -= Rat(c[j]) * alpha_alpha_[j][static_cast<size_t>(i)];
  }
  return r;
}

Scalar InducedModule::qb(const Rat& a, long eps) const {
  auto key = std::make_pair(a, eps);
  auto it = qbracket_memo_.find(key);
  if (it != qbracket_memo_.end()) return it->second;
  Scalar s = qbracket(a, Rat(eps), param_);
  qbracket_memo_.emplace(key, s);
  return s;
}

ModuleVector InducedModule::act_f(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms()) {
    FWord nw;
    nw.reserve(word.size() + 1);
    nw.push_back(i);
    nw.insert(nw.end(), word.begin(), word.end());
    out.add(nw, c);
  }
  return out;
}

// e_i deletes one matching letter at a time: the letter at position s goes
// away with coefficient
//   (-1)^{[e_i] * (odd letters before s)} [ (lambda - suffix after s, alpha_i) ]_{eps_i}.
void InducedModule::add_e_action(int i, const FWord& w, const Scalar& coeff,
                                 ModuleVector& out) const {
  const size_t p = w.size();
  if (p == 0) return;
  const int ei_odd = data_.parity_of_node(i);
  const long eps_i = data_.eps(i);
  std::vector<int> prefix_par(p + 1, 0);
  for (size_t s = 0; s < p; ++s)
    prefix_par[s + 1] = prefix_par[s] ^ data_.parity_of_node(w[s]);

  Rat suffix;  // (sum of alpha_{w[r]} for r > s, alpha_i)
  for (size_t s = p; s-- > 0;) {
    if (w[s] == i) {
      Scalar c = qb(lam_alpha_[static_cast<size_t>(i)] - suffix, eps_i);
      if (!c.is_zero()) {
        if (ei_odd && prefix_par[s]) c = -c;
        FWord del;
        del.reserve(p - 1);
        del.insert(del.end(), w.begin(), w.begin() + static_cast<long>(s));
        del.insert(del.end(), w.begin() + static_cast<long>(s) + 1, w.end());
        out.add(del, coeff * c);
      }
    }
    suffix += alpha_alpha_[static_cast<size_t>(w[s])][static_cast<size_t>(i)];
  }
}

ModuleVector InducedModule::act_e(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms()) add_e_action(i, word, c, out);
  return out;
}

ModuleVector InducedModule::act_k(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms())
    out.add(word, c * qpow(pairing_with_alpha(content_of(word), i), param_));
  return out;
}

ModuleVector InducedModule::act_kinv(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms())
    out.add(word, c * qpow(-pairing_with_alpha(content_of(word), i), param_));
  return out;
}

ModuleVector InducedModule::act_d(const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms()) {
    long zeros = static_cast<long>(std::count(word.begin(), word.end(), 0));
    if (zeros != 0) out.add(word, c * Scalar(Rat(-zeros)));
  }
  return out;
}

ModuleVector InducedModule::act_s(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms())
    out.add(word, c * qb(pairing_with_alpha(content_of(word), i), data_.eps(i)));
  return out;
}

ModuleVector InducedModule::act_c(int i, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : w.terms())
    out.add(word, c * qcosh(pairing_with_alpha(content_of(word), i), param_));
  return out;
}

ModuleVector InducedModule::act_symbol(const GenSymbol& g, const ModuleVector& w) const {
  switch (g.kind) {
    case GenKind::E:
      return act_e(g.index, w);
    case GenKind::F:
      return act_f(g.index, w);
    case GenKind::K:
      return act_k(g.index, w);
    case GenKind::KInv:
      return act_kinv(g.index, w);
    case GenKind::S:
      return act_s(g.index, w);
    case GenKind::C:
      return act_c(g.index, w);
    case GenKind::D:
      return act_d(w);
  }
  throw std::logic_error("unsupported generator symbol");
}

ModuleVector InducedModule::act_word(const GradedWord& x, const ModuleVector& w) const {
  ModuleVector cur = w;
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    if (cur.is_zero()) break;
    cur = act_symbol(*it, cur);
  }
  return cur;
}

ModuleVector InducedModule::act_element(const AlgElement& x, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [word, c] : x.terms()) out += act_word(word, w).scaled(c);
  return out;
}

// ---- Contravariant form -----------------------------------------------------

Scalar InducedModule::pair(const FWord& a, const FWord& b) const {
  if (content_of(a) != content_of(b)) return Scalar();
  GradedWord up;
  up.reserve(a.size());
  for (size_t s = a.size(); s-- > 0;) up.push_back(gen_e(a[s]));
  return act_word(up, single_word(b)).coeff(FWord{});
}

Scalar InducedModule::pair(const ModuleVector& x, const ModuleVector& y) const {
  Scalar r;
  for (const auto& [wa, ca] : x.terms())
    for (const auto& [wb, cb] : y.terms()) r += ca * cb * pair(wa, wb);
  return r;
}

// ---- Weight-space enumeration ----------------------------------------------

long InducedModule::basis_size(const Content& c) const {
  unsigned long total = 0;
  for (long x : c) {
    if (x < 0) throw std::invalid_argument("negative content entry");
    total += static_cast<unsigned long>(x);
  }
  mpz_class count = 1, rem = total;
  for (long x : c) {
    mpz_class b;
    mpz_bin_ui(b.get_mpz_t(), rem.get_mpz_t(), static_cast<unsigned long>(x));
    count *= b;
    rem -= x;
  }
  if (!count.fits_slong_p()) return LONG_MAX;
  return count.get_si();
}

std::vector<FWord> InducedModule::weight_basis(const Content& c) const {
  long count = basis_size(c);
  if (static_cast<unsigned long long>(count) > basis_limit_) {
    std::ostringstream os;
    os << "weight space [";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "] has " << count << " words, over the limit " << basis_limit_;
    throw ResourceLimit(os.str());
  }
  FWord sorted;
  for (size_t i = 0; i < c.size(); ++i)
    sorted.insert(sorted.end(), static_cast<size_t>(c[i]), static_cast<int>(i));
  std::vector<FWord> out;
  out.reserve(static_cast<size_t>(count));
  do {
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

std::vector<Content> InducedModule::contents_up_to(long depth) const {
  std::vector<Content> out;
  const size_t nodes = static_cast<size_t>(data_.node_count());
  Content cur(nodes, 0);
  auto rec = [&](auto&& self, size_t pos, long remaining) -> void {
    if (pos + 1 == nodes) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (long x = 0; x <= remaining; ++x) {
      cur[pos] = x;
      self(self, pos + 1, remaining - x);
    }
  };
  for (long total = 0; total <= depth; ++total) rec(rec, 0, total);
  return out;
}

// ---- Rank computations ------------------------------------------------------

namespace {

// One row of scalars with denominators cleared to a common multiple and the
// overall v-shift stripped; both operations preserve the row space over the
// fraction field.
std::vector<LaurentPoly> cleared_row(const std::vector<Scalar>& row) {
  LaurentPoly one(GaussRat(1));
  LaurentPoly lcm = one;
  for (const auto& s : row) {
    if (s.is_zero()) continue;
    const LaurentPoly& d = s.den();
    if (d == one) continue;
    LaurentPoly g = laurent_gcd(lcm, d);
    lcm = lcm * laurent_divide_exact(d, g);
  }
  std::vector<LaurentPoly> out(row.size());
  bool any = false;
  int min_exp = 0;
  for (size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_zero()) continue;
    out[j] = row[j].num() * laurent_divide_exact(lcm, row[j].den());
    int m = out[j].min_exp();
    if (!any || m < min_exp) min_exp = m;
    any = true;
  }
  if (any && min_exp != 0)
    for (auto& p : out)
      if (!p.is_zero()) p = p.shifted(-min_exp);
  return out;
}

}  // namespace

long exact_rank(const std::vector<std::vector<Scalar>>& m) {
  const size_t rows = m.size();
  if (rows == 0) return 0;
  const size_t cols = m[0].size();
  if (cols == 0) return 0;
  std::vector<std::vector<LaurentPoly>> a(rows);
  for (size_t i = 0; i < rows; ++i) {
    if (m[i].size() != cols) throw std::invalid_argument("ragged matrix");
    a[i] = cleared_row(m[i]);
  }

  const size_t steps = std::min(rows, cols);
  LaurentPoly prev(GaussRat(1));
  for (size_t k = 0; k < steps; ++k) {
    // Full pivoting; among nonzero candidates prefer the fewest terms to
    // keep the fraction-free products small.
    size_t pi = rows, pj = cols;
    int best = INT_MAX;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j)
        if (!a[i][j].is_zero() && a[i][j].term_count() < best) {
          best = a[i][j].term_count();
          pi = i;
          pj = j;
        }
    if (pi == rows) return static_cast<long>(k);
    std::swap(a[k], a[pi]);
    if (pj != k)
      for (size_t i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pj]);

    for (size_t i = k + 1; i < rows; ++i) {
      for (size_t j = k + 1; j < cols; ++j) {
        LaurentPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = t.is_zero() ? t : laurent_divide_exact(t, prev);
      }
      a[i][k] = LaurentPoly();
    }
    prev = a[k][k];
  }
  return static_cast<long>(steps);
}

long evaluated_rank(const std::vector<std::vector<Scalar>>& m, const GaussRat& v0) {
  const size_t rows = m.size();
  if (rows == 0) return 0;
  const size_t cols = m[0].size();
  std::vector<std::vector<GaussRat>> a(rows, std::vector<GaussRat>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].evaluate(v0);

  long rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = rows;
    for (size_t i = row; i < rows; ++i)
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[row], a[piv]);
    GaussRat inv = a[row][col].inverse();
    for (size_t i = row + 1; i < rows; ++i) {
      if (a[i][col].is_zero()) continue;
      GaussRat f = a[i][col] * inv;
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

// ---- Gram data, radical, character ------------------------------------------

std::string InducedModule::cache_key(const Content& c) const {
  std::ostringstream os;
  os << data_.to_json() << "|L:";
  for (size_t i = 0; i < lambda_.c.size(); ++i) os << (i ? "," : "") << rat_to_string(lambda_.c[i]);
  os << "|C:";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "|P:" << (param_ == QParam::Generic ? "g" : "mg") << "|qaffine-gram-1";
  return os.str();
}

const GramData& InducedModule::gram(const Content& c) const {
  auto it = grams_.find(c);
  if (it != grams_.end()) return it->second;

  GramData g;
  g.content = c;
  g.basis = weight_basis(c);
  const size_t n = g.basis.size();
  g.matrix.assign(n, std::vector<Scalar>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) g.matrix[a][b] = pair(g.basis[a], g.basis[b]);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (g.matrix[a][b] != g.matrix[b][a])
        throw std::logic_error("contravariant form is not symmetric at a weight space");

  g.rank = exact_rank(g.matrix);
  for (const Rat& pt : sample_points_) {
    try {
      long r = evaluated_rank(g.matrix, GaussRat(pt));
      if (r > g.rank) throw std::logic_error("specialized rank exceeds the exact rank");
    } catch (const PoleError&) {
      // a sample point may sit on a denominator zero; skip it
    }
  }

  auto known = ranks_.find(c);
  if (known != ranks_.end() && known->second != g.rank)
    throw std::logic_error("cached rank disagrees with a recomputed Gram matrix");
  ranks_[c] = g.rank;
  if (rank_cache_) rank_cache_->store(cache_key(c), g.rank);
  return grams_.emplace(c, std::move(g)).first->second;
}

long InducedModule::multiplicity(const Content& c) const {
  auto it = ranks_.find(c);
  if (it != ranks_.end()) return it->second;
  if (rank_cache_) {
    if (auto hit = rank_cache_->lookup(cache_key(c))) {
      ranks_[c] = *hit;
      return *hit;
    }
  }
  return gram(c).rank;
}

bool InducedModule::in_radical(const ModuleVector& w) const {
  std::map<Content, std::vector<std::pair<FWord, Scalar>>> groups;
  for (const auto& [word, c] : w.terms()) groups[content_of(word)].emplace_back(word, c);
  for (const auto& [c, terms] : groups) {
    const GramData& g = gram(c);
    std::vector<std::pair<size_t, Scalar>> coords;
    coords.reserve(terms.size());
    for (const auto& [word, x] : terms) {
      auto pos = std::lower_bound(g.basis.begin(), g.basis.end(), word);
      if (pos == g.basis.end() || *pos != word)
        throw std::logic_error("word missing from its weight basis");
      coords.emplace_back(static_cast<size_t>(pos - g.basis.begin()), x);
    }
    for (size_t a = 0; a < g.basis.size(); ++a) {
      Scalar dot;
      for (const auto& [b, x] : coords) dot += g.matrix[a][b] * x;
      if (!dot.is_zero()) return false;
    }
  }
  return true;
}

CharacterTable InducedModule::character(long depth) const {
  CharacterTable table;
  for (const Content& c : contents_up_to(depth)) {
    if (static_cast<unsigned long long>(basis_size(c)) > basis_limit_) {
      table.partial = true;
      break;
    }
    table.entries.push_back({c, multiplicity(c)});
  }
  return table;
}

std::optional<long> InducedModule::nilpotency_index(int i, const ModuleVector& w,
                                                    long m_max) const {
  ModuleVector cur = w;
  for (long m = 0; m <= m_max; ++m) {
    if (in_radical(cur)) return m;
    cur = act_f(i, cur);
  }
  return std::nullopt;
}

// ---- Relation verification ---------------------------------------------------

VerificationReport InducedModule::relations_report(long depth) const {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "serre";
  rep.algebra = data_.name();
  rep.lambda_labels = data_.dynkin_labels(lambda_);
  rep.depth = depth;

  const int nodes = data_.node_count();
  auto fail = [&](const std::string& rel, const Content& c, const FWord& w,
                  const ModuleVector& residual) {
    rep.fail({{"relation", rel},
              {"alpha_coords", c},
              {"word", w},
              {"residual", render(residual)}});
  };
  auto rel_name = [](const char* base, int i, int j = -1) {
    std::ostringstream os;
    os << base << "(" << i;
    if (j >= 0) os << "," << j;
    os << ")";
    return os.str();
  };

  const auto contents = contents_up_to(depth);
  for (const Content& c : contents) {
    if (!rep.pass) break;
    for (const FWord& u : weight_basis(c)) {
      if (!rep.pass) break;
      const ModuleVector vu = single_word(u);
      const ModuleVector du = act_d(vu);
      for (int i = 0; i < nodes && rep.pass; ++i) {
        ModuleVector ku = act_k(i, vu);
        if (act_kinv(i, ku) != vu || act_k(i, act_kinv(i, vu)) != vu)
          fail(rel_name("k_inverse", i), c, u, act_kinv(i, ku) - vu);
        if (ku != vu.scaled(qpow(pairing_with_alpha(c, i), param_)))
          fail(rel_name("k_diagonal", i), c, u,
               ku - vu.scaled(qpow(pairing_with_alpha(c, i), param_)));
        if (act_d(ku) != act_k(i, du))
          fail(rel_name("d_k_commute", i), c, u, act_d(ku) - act_k(i, du));
        {
          ModuleVector eu = act_e(i, vu);
          ModuleVector lhs = act_d(eu) - act_e(i, du);
          ModuleVector rhs = (i == 0) ? eu : ModuleVector();
          if (lhs != rhs) fail(rel_name("d_e", i), c, u, lhs - rhs);
        }
        {
          ModuleVector fu = act_f(i, vu);
          ModuleVector lhs = act_d(fu) - act_f(i, du);
          ModuleVector rhs = (i == 0) ? ModuleVector() - fu : ModuleVector();
          if (lhs != rhs) fail(rel_name("d_f", i), c, u, lhs - rhs);
        }
        for (int j = 0; j < nodes && rep.pass; ++j) {
          const Rat m = alpha_alpha_[static_cast<size_t>(i)][static_cast<size_t>(j)];
          {
            ModuleVector lhs = act_k(i, act_e(j, vu));
            ModuleVector rhs = act_e(j, ku).scaled(qpow(m, param_));
            if (lhs != rhs) fail(rel_name("k_e", i, j), c, u, lhs - rhs);
          }
          {
            ModuleVector lhs = act_k(i, act_f(j, vu));
            ModuleVector rhs = act_f(j, ku).scaled(qpow(-m, param_));
            if (lhs != rhs) fail(rel_name("k_f", i, j), c, u, lhs - rhs);
          }
          {
            ModuleVector lhs = act_e(i, act_f(j, vu));
            ModuleVector tail = act_f(j, act_e(i, vu));
            if (data_.parity_of_node(i) && data_.parity_of_node(j))
              lhs += tail;
            else
              lhs -= tail;
            ModuleVector rhs = (i == j) ? act_s(i, vu) : ModuleVector();
            if (lhs != rhs) fail(rel_name("ef_cross", i, j), c, u, lhs - rhs);
          }
        }
      }
    }
  }

  // Higher e-relations vanish identically on the span of f-words.
  for (int i = 0; i < nodes && rep.pass; ++i) {
    for (int j = 0; j < nodes && rep.pass; ++j) {
      if (i == j) continue;
      const AlgElement se = serre_element(data_, i, j, GenKind::E, param_);
      for (const Content& c : contents) {
        if (!rep.pass) break;
        for (const FWord& u : weight_basis(c)) {
          ModuleVector z = act_element(se, single_word(u));
          if (!z.is_zero()) {
            fail(rel_name("serre_e", i, j), c, u, z);
            break;
          }
        }
      }
    }
  }

  // Higher f-relations hold modulo the radical. With S the f-relation
  // element and T its e-adjoint (reversed words, same coefficients),
  // <S u, u'> = <u, T u'>, so S u lies in the radical for every u at a
  // content exactly when Gram * coords(T u') vanishes for every basis word
  // u' at the shifted content.
  for (int i = 0; i < nodes && rep.pass; ++i) {
    for (int j = 0; j < nodes && rep.pass; ++j) {
      if (i == j) continue;
      const AlgElement sf = serre_element(data_, i, j, GenKind::F, param_);
      AlgElement adj;
      for (const auto& [word, coeff] : as_index_words(sf, GenKind::F)) {
        GradedWord g;
        g.reserve(word.size());
        for (size_t s = word.size(); s-- > 0;) g.push_back(gen_e(word[s]));
        adj.add(g, coeff);
      }
      Content shift(static_cast<size_t>(nodes), 0);
      shift[static_cast<size_t>(i)] = 1 - data_.a(i, j);
      shift[static_cast<size_t>(j)] += 1;

      for (const Content& c : contents) {
        if (!rep.pass) break;
        const GramData& g = gram(c);
        Content target = c;
        for (size_t r = 0; r < target.size(); ++r) target[r] += shift[r];
        for (const FWord& up : weight_basis(target)) {
          ModuleVector z = act_element(adj, single_word(up));
          std::vector<std::pair<size_t, Scalar>> coords;
          for (const auto& [word, x] : z.terms()) {
            auto pos = std::lower_bound(g.basis.begin(), g.basis.end(), word);
            if (pos == g.basis.end() || *pos != word)
              throw std::logic_error("adjoint image escaped its weight space");
            coords.emplace_back(static_cast<size_t>(pos - g.basis.begin()), x);
          }
          bool ok = true;
          for (size_t a = 0; a < g.basis.size() && ok; ++a) {
            Scalar dot;
            for (const auto& [b, x] : coords) dot += g.matrix[a][b] * x;
            if (!dot.is_zero()) ok = false;
          }
          if (!ok) {
            rep.fail({{"relation", rel_name("serre_f", i, j)},
                      {"alpha_coords", c},
                      {"word", up},
                      {"residual", render(z)}});
            break;
          }
        }
      }
    }
  }

  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport InducedModule::classical_action_check(long depth) const {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "classical";
  rep.algebra = data_.name();
  rep.lambda_labels = data_.dynkin_labels(lambda_);
  rep.depth = depth;

  for (const Content& c : contents_up_to(depth)) {
    if (!rep.pass) break;
    const GramData& g = gram(c);
    try {
      long classical = evaluated_rank(g.matrix, GaussRat(1));
      if (classical != g.rank)
        rep.fail({{"alpha_coords", c},
                  {"generic_rank", g.rank},
                  {"classical_rank", classical}});
    } catch (const PoleError& e) {
      rep.fail({{"alpha_coords", c}, {"pole", e.what()}});
    }
  }

  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---- Tensor products ---------------------------------------------------------

void TensorVector::add(const FPair& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorVector& TensorVector::operator+=(const TensorVector& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

TensorVector TensorVector::scaled(const Scalar& c) const {
  TensorVector out;
  if (c.is_zero()) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
  return out;
}

TensorModule::TensorModule(const InducedModule& left, const InducedModule& right)
    : l_(left), r_(right) {
  if (l_.data().to_json() != r_.data().to_json())
    throw std::invalid_argument("tensor factors live over different algebras");
  if (l_.param() != r_.param())
    throw std::invalid_argument("tensor factors use different realizations");
}

namespace {

void add_outer(TensorVector& out, const ModuleVector& a, const ModuleVector& b, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out.add({wa, wb}, ca * cb * c);
}

}  // namespace

TensorVector TensorModule::act_symbol(const GenSymbol& g, const TensorVector& w) const {
  TensorVector out;
  const Scalar half(Rat(1, 2));
  for (const auto& [pairw, c] : w.terms()) {
    const ModuleVector u = single_word(pairw.first);
    const ModuleVector v = single_word(pairw.second);
    switch (g.kind) {
      case GenKind::E: {
        add_outer(out, l_.act_e(g.index, u), r_.act_k(g.index, v), c);
        Scalar sc = c;
        if (l_.data().parity_of_node(g.index) && l_.parity_of(pairw.first)) sc = -sc;
        add_outer(out, u, r_.act_e(g.index, v), sc);
        break;
      }
      case GenKind::F: {
        add_outer(out, l_.act_f(g.index, u), v, c);
        Scalar sc = c;
        if (l_.data().parity_of_node(g.index) && l_.parity_of(pairw.first)) sc = -sc;
        add_outer(out, l_.act_kinv(g.index, u), r_.act_f(g.index, v), sc);
        break;
      }
      case GenKind::K:
        add_outer(out, l_.act_k(g.index, u), r_.act_k(g.index, v), c);
        break;
      case GenKind::KInv:
        add_outer(out, l_.act_kinv(g.index, u), r_.act_kinv(g.index, v), c);
        break;
      case GenKind::D:
        add_outer(out, l_.act_d(u), v, c);
        add_outer(out, u, r_.act_d(v), c);
        break;
      case GenKind::S:
        add_outer(out, l_.act_s(g.index, u), r_.act_k(g.index, v), c);
        add_outer(out, l_.act_kinv(g.index, u), r_.act_s(g.index, v), c);
        break;
      case GenKind::C:
        add_outer(out, l_.act_k(g.index, u), r_.act_k(g.index, v), c * half);
        add_outer(out, l_.act_kinv(g.index, u), r_.act_kinv(g.index, v), c * half);
        break;
    }
  }
  return out;
}

TensorVector TensorModule::act_word(const GradedWord& x, const TensorVector& w) const {
  TensorVector cur = w;
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    if (cur.is_zero()) break;
    cur = act_symbol(*it, cur);
  }
  return cur;
}

TensorVector TensorModule::act_element(const AlgElement& x, const TensorVector& w) const {
  TensorVector out;
  for (const auto& [word, c] : x.terms()) out += act_word(word, w).scaled(c);
  return out;
}

VerificationReport TensorModule::relations_report(long depth) const {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "tensor";
  rep.algebra = l_.data().name();
  rep.lambda_labels = l_.data().dynkin_labels(l_.lambda());
  rep.depth = depth;

  const AlgebraData& data = l_.data();
  const int nodes = data.node_count();
  const QParam p = l_.param();

  auto fail = [&](const std::string& rel, const FPair& w, const TensorVector& residual) {
    std::ostringstream os;
    size_t shown = 0;
    for (const auto& [pw, c] : residual.terms()) {
      if (shown++ == 4) {
        os << " + ...";
        break;
      }
      if (shown > 1) os << " + ";
      os << "(" << render(c) << ")*t";
    }
    rep.fail({{"relation", rel},
              {"left_word", w.first},
              {"right_word", w.second},
              {"residual_terms", residual.terms().size()},
              {"residual_head", os.str()}});
  };
  auto rel_name = [](const char* base, int i, int j = -1) {
    std::ostringstream os;
    os << base << "(" << i;
    if (j >= 0) os << "," << j;
    os << ")";
    return os.str();
  };
  auto single_pair = [](const FWord& a, const FWord& b) {
    TensorVector t;
    t.add({a, b}, Scalar(1));
    return t;
  };

  // All basis tensors of total depth <= depth.
  std::vector<FPair> basis_pairs;
  for (const Content& c1 : l_.contents_up_to(depth)) {
    long used = 0;
    for (long x : c1) used += x;
    for (const FWord& u : l_.weight_basis(c1))
      for (const Content& c2 : r_.contents_up_to(depth - used)) {
        long total2 = 0;
        for (long x : c2) total2 += x;
        if (total2 + used > depth) continue;
        for (const FWord& v : r_.weight_basis(c2)) basis_pairs.emplace_back(u, v);
      }
  }
  std::sort(basis_pairs.begin(), basis_pairs.end());
  basis_pairs.erase(std::unique(basis_pairs.begin(), basis_pairs.end()), basis_pairs.end());

  for (const FPair& bp : basis_pairs) {
    if (!rep.pass) break;
    const TensorVector w = single_pair(bp.first, bp.second);
    const TensorVector dw = act_symbol(gen_d(), w);
    for (int i = 0; i < nodes && rep.pass; ++i) {
      const TensorVector kw = act_symbol(gen_k(i), w);
      if (act_symbol(gen_kinv(i), kw) != w)
        fail(rel_name("k_inverse", i), bp, act_symbol(gen_kinv(i), kw) - w);
      {
        Rat eig = l_.pairing_with_alpha(l_.content_of(bp.first), i) +
                  r_.pairing_with_alpha(r_.content_of(bp.second), i);
        if (kw != w.scaled(qpow(eig, p)))
          fail(rel_name("k_diagonal", i), bp, kw - w.scaled(qpow(eig, p)));
      }
      if (act_symbol(gen_d(), kw) != act_symbol(gen_k(i), dw))
        fail(rel_name("d_k_commute", i), bp,
             act_symbol(gen_d(), kw) - act_symbol(gen_k(i), dw));
      {
        TensorVector ew = act_symbol(gen_e(i), w);
        TensorVector lhs = act_symbol(gen_d(), ew) - act_symbol(gen_e(i), dw);
        TensorVector rhs = (i == 0) ? ew : TensorVector();
        if (lhs != rhs) fail(rel_name("d_e", i), bp, lhs - rhs);
      }
      {
        TensorVector fw = act_symbol(gen_f(i), w);
        TensorVector lhs = act_symbol(gen_d(), fw) - act_symbol(gen_f(i), dw);
        TensorVector rhs = (i == 0) ? TensorVector() - fw : TensorVector();
        if (lhs != rhs) fail(rel_name("d_f", i), bp, lhs - rhs);
      }
      for (int j = 0; j < nodes && rep.pass; ++j) {
        const Rat m = data.pairing(data.alpha(i), data.alpha(j));
        {
          TensorVector lhs = act_symbol(gen_k(i), act_symbol(gen_e(j), w));
          TensorVector rhs = act_symbol(gen_e(j), kw).scaled(qpow(m, p));
          if (lhs != rhs) fail(rel_name("k_e", i, j), bp, lhs - rhs);
        }
        {
          TensorVector lhs = act_symbol(gen_k(i), act_symbol(gen_f(j), w));
          TensorVector rhs = act_symbol(gen_f(j), kw).scaled(qpow(-m, p));
          if (lhs != rhs) fail(rel_name("k_f", i, j), bp, lhs - rhs);
        }
        {
          TensorVector lhs = act_symbol(gen_e(i), act_symbol(gen_f(j), w));
          TensorVector tail = act_symbol(gen_f(j), act_symbol(gen_e(i), w));
          if (data.parity_of_node(i) && data.parity_of_node(j))
            lhs += tail;
          else
            lhs -= tail;
          TensorVector rhs = (i == j) ? act_symbol(gen_s(i), w) : TensorVector();
          if (lhs != rhs) fail(rel_name("ef_cross", i, j), bp, lhs - rhs);
        }
      }
    }
  }

  // Serre families. The e-family vanishes exactly; the f-family is zero
  // modulo radical (x) module + module (x) radical, which blockwise means
  // G_left * coefficients * G_right = 0.
  for (int i = 0; i < nodes && rep.pass; ++i) {
    for (int j = 0; j < nodes && rep.pass; ++j) {
      if (i == j) continue;
      const AlgElement se = serre_element(data, i, j, GenKind::E, p);
      const AlgElement sf = serre_element(data, i, j, GenKind::F, p);
      for (const FPair& bp : basis_pairs) {
        if (!rep.pass) break;
        const TensorVector w = single_pair(bp.first, bp.second);
        TensorVector ze = act_element(se, w);
        if (!ze.is_zero()) {
          fail(rel_name("serre_e", i, j), bp, ze);
          break;
        }
        TensorVector zf = act_element(sf, w);
        // group by biweight
        std::map<std::pair<Content, Content>, std::vector<std::pair<FPair, Scalar>>> blocks;
        for (const auto& [pw, c] : zf.terms())
          blocks[{l_.content_of(pw.first), r_.content_of(pw.second)}].emplace_back(pw, c);
        for (const auto& [key, entries] : blocks) {
          const GramData& g1 = l_.gram(key.first);
          const GramData& g2 = r_.gram(key.second);
          const size_t n1 = g1.basis.size(), n2 = g2.basis.size();
          std::vector<std::vector<Scalar>> acc(n1, std::vector<Scalar>(n2));
          for (const auto& [pw, c] : entries) {
            auto p1 = std::lower_bound(g1.basis.begin(), g1.basis.end(), pw.first);
            auto p2 = std::lower_bound(g2.basis.begin(), g2.basis.end(), pw.second);
            size_t a = static_cast<size_t>(p1 - g1.basis.begin());
            size_t b = static_cast<size_t>(p2 - g2.basis.begin());
            for (size_t a2 = 0; a2 < n1; ++a2) {
              if (g1.matrix[a][a2].is_zero()) continue;
              Scalar t = c * g1.matrix[a][a2];
              for (size_t b2 = 0; b2 < n2; ++b2) {
                if (g2.matrix[b][b2].is_zero()) continue;
                acc[a2][b2] += t * g2.matrix[b][b2];
              }
            }
          }
          bool ok = true;
          for (size_t a2 = 0; a2 < n1 && ok; ++a2)
            for (size_t b2 = 0; b2 < n2 && ok; ++b2)
              if (!acc[a2][b2].is_zero()) ok = false;
          if (!ok) {
            rep.fail({{"relation", rel_name("serre_f", i, j)},
                      {"left_word", bp.first},
                      {"right_word", bp.second},
                      {"left_coords", key.first},
                      {"right_coords", key.second}});
            break;
          }
        }
      }
    }
  }

  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace qaffine
