#include "qaffine/scalar.hpp"

#include <cctype>
#include <cstddef>
#include <vector>

namespace qaffine {

int LaurentPoly::min_exp() const {
  if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

GaussRat LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? GaussRat() : it->second;
}

void LaurentPoly::add_term(int exp, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(exp, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e + k, c);
  return p;
}

LaurentPoly LaurentPoly::scaled(const GaussRat& c) const {
  LaurentPoly p;
  if (c.is_zero()) return p;
  for (const auto& [e, x] : terms_) p.terms_.emplace(e, x * c);
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p = a;
  p += b;
  return p;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p = a;
  p -= b;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, ca * cb);
  return p;
}

LaurentPoly LaurentPoly::operator-() const { return scaled(GaussRat(-1)); }

namespace {

GaussRat gauss_pow(const GaussRat& base, long e) {
  if (e < 0) return gauss_pow(base.inverse(), -e);
  GaussRat acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

}  // namespace

GaussRat LaurentPoly::evaluate(const GaussRat& v0) const {
  GaussRat acc;
  for (const auto& [e, c] : terms_) {
    if (e < 0 && v0.is_zero()) throw PoleError("negative exponent evaluated at v = 0");
    acc += c * gauss_pow(v0, e);
  }
  return acc;
}

// ---- dense helpers for division and gcd -----------------------------------
//
// A Laurent polynomial splits as v^offset * P with P an ordinary polynomial
// whose constant term is nonzero. Division and gcd work on the P parts.

namespace {

struct Dense {
  int offset = 0;
  std::vector<GaussRat> c;  // c[i] holds the coefficient of v^(offset+i)
  bool is_zero() const { return c.empty(); }
};

Dense to_dense(const LaurentPoly& p) {
  Dense d;
  if (p.is_zero()) return d;
  d.offset = p.min_exp();
  d.c.assign(static_cast<size_t>(p.max_exp() - d.offset) + 1, GaussRat());
  for (const auto& [e, v] : p.terms()) d.c[static_cast<size_t>(e - d.offset)] = v;
  return d;
}

LaurentPoly from_dense(int offset, const std::vector<GaussRat>& c) {
  LaurentPoly p;
  for (size_t i = 0; i < c.size(); ++i) p.add_term(offset + static_cast<int>(i), c[i]);
  return p;
}

void trim(std::vector<GaussRat>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Ordinary-polynomial division over Q(i); returns quotient, leaves the
// remainder in a.
std::vector<GaussRat> divmod(std::vector<GaussRat>& a, const std::vector<GaussRat>& b) {
  std::vector<GaussRat> q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, GaussRat());
  GaussRat lead_inv = b.back().inverse();
  for (size_t i = a.size(); i-- >= b.size();) {
    GaussRat f = a[i] * lead_inv;
    if (f.is_zero()) continue;
    q[i - (b.size() - 1)] = f;
    for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
    if (i == 0) break;
  }
  trim(a);
  return q;
}

}  // namespace

LaurentPoly laurent_divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::logic_error("division by zero polynomial");
  if (a.is_zero()) return LaurentPoly();
  Dense da = to_dense(a), db = to_dense(b);
  std::vector<GaussRat> rem = da.c;
  std::vector<GaussRat> q = divmod(rem, db.c);
  if (!rem.empty()) throw std::logic_error("non-exact polynomial division");
  return from_dense(da.offset - db.offset, q);
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly();
  std::vector<GaussRat> x = to_dense(a).c, y = to_dense(b).c;
  while (!y.empty()) {
    divmod(x, y);  // x becomes the remainder
    x.swap(y);
  }
  // Unit-normalize so the constant term is 1; it is nonzero because the
  // stripped inputs have nonzero constant terms.
  GaussRat inv = x.front().inverse();
  for (auto& c : x) c = c * inv;
  return from_dense(0, x);
}

// ---- Scalar ----------------------------------------------------------------

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void Scalar::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("scalar with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly(GaussRat(1));
    return;
  }
  int sn = num_.min_exp(), sd = den_.min_exp();
  if (sd == den_.max_exp()) {
    // Monomial denominator: no gcd needed, just move the unit into the numerator.
    GaussRat unit = den_.coeff(sd).inverse();
    num_ = num_.scaled(unit).shifted(-sd);
    den_ = LaurentPoly(GaussRat(1));
    return;
  }
  LaurentPoly p = num_.shifted(-sn), q = den_.shifted(-sd);
  LaurentPoly g = laurent_gcd(p, q);
  if (g != LaurentPoly(GaussRat(1))) {
    p = laurent_divide_exact(p, g);
    q = laurent_divide_exact(q, g);
  }
  GaussRat unit = q.coeff(0).inverse();
  num_ = p.scaled(unit).shifted(sn - sd);
  den_ = q.scaled(unit);
}

bool Scalar::is_one() const {
  LaurentPoly one(GaussRat(1));
  return num_ == one && den_ == one;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  *this *= o.inverse();
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar s = a;
  s += b;
  return s;
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar s = a;
  s -= b;
  return s;
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar s = a;
  s *= b;
  return s;
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar s = a;
  s /= b;
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = s.num_.scaled(GaussRat(-1));
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  return Scalar(den_, num_);
}

GaussRat Scalar::evaluate(const GaussRat& v0) const {
  GaussRat d = den_.evaluate(v0);
  if (d.is_zero())
    throw PoleError("denominator " + render(den_) + " vanishes at v = " + to_string(v0));
  return num_.evaluate(v0) / d;
}

// ---- standard coefficient functions ----------------------------------------

Scalar qpow(const Rat& a, QParam p) {
  Rat doubled = a * 2;
  if (!is_integer(doubled))
    throw std::domain_error("q-exponent must be half-integral: " + rat_to_string(a));
  long e = to_long(doubled);
  GaussRat c = (p == QParam::Generic) ? GaussRat(1) : GaussRat::i_power(e);
  return Scalar(LaurentPoly::monomial(c, static_cast<int>(e)), LaurentPoly(GaussRat(1)));
}

Scalar qbracket(const Rat& a, const Rat& eps, QParam p) {
  if (eps == 0) throw std::domain_error("qbracket with zero normalizer");
  return (qpow(a, p) - qpow(Rat(-a), p)) / (qpow(eps, p) - qpow(Rat(-eps), p));
}

Scalar qcosh(const Rat& m, QParam p) {
  return (qpow(m, p) + qpow(Rat(-m), p)) / Scalar(2);
}

Scalar qsinh(const Rat& m, QParam p) {
  return (qpow(m, p) - qpow(Rat(-m), p)) / Scalar(2);
}

// ---- text form --------------------------------------------------------------

namespace {

std::string render_abs_rat(const Rat& r) { return Rat(abs(r)).get_str(); }

void append_term(std::string& out, const GaussRat& c, int exp, bool first) {
  std::string mono;
  if (exp == 1)
    mono = "v";
  else if (exp != 0)
    mono = "v^" + std::to_string(exp);

  bool negative = false;
  std::string body;
  if (c.is_real()) {
    negative = c.re < 0;
    if (mono.empty())
      body = render_abs_rat(c.re);
    else if (c.re == 1 || c.re == -1)
      body = mono;
    else
      body = render_abs_rat(c.re) + "*" + mono;
  } else {
    body = to_string(c);
    if (!mono.empty()) body += "*" + mono;
  }

  if (first)
    out += (negative ? "-" : "") + body;
  else
    out += (negative ? "-" : "+") + body;
}

}  // namespace

std::string render(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    append_term(out, it->second, it->first, first);
    first = false;
  }
  return out;
}

std::string render(const Scalar& s) {
  if (s.den() == LaurentPoly(GaussRat(1))) return render(s.num());
  return "(" + render(s.num()) + ")/(" + render(s.den()) + ")";
}

namespace {

struct Parser {
  std::string s;  // whitespace pre-stripped
  size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("scalar parse error at offset " + std::to_string(pos) + ": " + why);
  }

  Rat rational() {
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos;
    }
    size_t start = pos;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (peek() == '/') {
      ++pos;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    }
    Rat r = rat_from_string(s.substr(start, pos - start));
    return neg ? Rat(-r) : r;
  }

  long integer() {
    size_t start = pos;
    if (peek() == '-' || peek() == '+') ++pos;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    return std::stol(s.substr(start, pos - start));
  }

  // "(a+b*i)" or "(a-b*i)"; also tolerates "(a)" and "(b*i)".
  GaussRat complex_atom() {
    expect('(');
    Rat re(0), im(0);
    bool have_real = false;
    if (peek() == 'i') {
      ++pos;
      im = 1;
    } else {
      Rat first = rational();
      if (peek() == '*' && pos + 1 < s.size() && s[pos + 1] == 'i') {
        pos += 2;
        im = first;
      } else {
        re = first;
        have_real = true;
      }
    }
    if (have_real && (peek() == '+' || peek() == '-')) {
      bool neg = peek() == '-';
      ++pos;
      if (peek() == 'i') {
        ++pos;
        im = neg ? -1 : 1;
      } else {
        Rat b = rational();
        if (peek() == '*') ++pos;
        expect('i');
        im = neg ? Rat(-b) : b;
      }
    }
    expect(')');
    return GaussRat(re, im);
  }

  // coefficient [* v[^k]] | v[^k]
  void term(LaurentPoly& acc, bool negate) {
    GaussRat c(1);
    bool have_coeff = false;
    if (peek() == '(') {
      c = complex_atom();
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = GaussRat(rational());
      have_coeff = true;
    }
    int exp = 0;
    if (have_coeff && peek() == '*') ++pos;
    if (peek() == 'v') {
      ++pos;
      exp = 1;
      if (peek() == '^') {
        ++pos;
        exp = static_cast<int>(integer());
      }
    } else if (!have_coeff) {
      fail("expected term");
    }
    acc.add_term(exp, negate ? -c : c);
  }

  LaurentPoly poly() {
    LaurentPoly acc;
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos;
    } else if (peek() == '+') {
      ++pos;
    }
    term(acc, negate);
    while (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos;
      term(acc, negate);
    }
    return acc;
  }
};

std::string strip_space(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

// When the whole string is "(num)/(den)" with the parens balanced around
// the slash, split it there; otherwise the string is a single polynomial.
bool split_quotient(const std::string& s, std::string& num, std::string& den) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') {
      --depth;
      if (depth == 0) {
        if (i + 2 < s.size() && s[i + 1] == '/' && s[i + 2] == '(') {
          num = s.substr(1, i - 1);
          den = s.substr(i + 3, s.size() - i - 4);
          return true;
        }
        return false;
      }
    }
  }
  return false;
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
  std::string s = strip_space(text);
  if (s.empty()) throw std::invalid_argument("empty scalar text");
  std::string numtext, dentext;
  LaurentPoly num, den(GaussRat(1));
  if (split_quotient(s, numtext, dentext)) {
    Parser pn{numtext};
    num = pn.poly();
    if (!pn.done()) pn.fail("trailing input");
    Parser pd{dentext};
    den = pd.poly();
    if (!pd.done()) pd.fail("trailing input");
  } else {
    Parser p{s};
    num = p.poly();
    if (!p.done()) p.fail("trailing input");
  }
  return Scalar(num, den);
}

}  // namespace qaffine
