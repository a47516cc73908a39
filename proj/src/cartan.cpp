#include "qaffine/cartan.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qaffine {

Weight& Weight::operator+=(const Weight& o) {
  if (c.size() != o.c.size()) throw std::invalid_argument("weight size mismatch");
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (c.size() != o.c.size()) throw std::invalid_argument("weight size mismatch");
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

Weight Weight::scaled(const Rat& t) const {
  Weight w = *this;
  for (auto& x : w.c) x *= t;
  return w;
}

std::string to_string(const Weight& w) {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < w.c.size(); ++i) {
    if (w.c[i] == 0) continue;
    Rat a = w.c[i];
    if (!first) out << (a < 0 ? " - " : " + ");
    if (first && a < 0) out << "-";
    first = false;
    Rat mag(abs(a));
    std::string sym = i == 0 ? "lambda0" : "alpha_" + std::to_string(i - 1);
    if (mag == 1)
      out << sym;
    else
      out << mag.get_str() << "*" << sym;
  }
  return first ? "0" : out.str();
}

// ---- small exact linear algebra ---------------------------------------------

namespace {

using Mat = std::vector<std::vector<Rat>>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

Mat kernel_basis(Mat m) {
  size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  Mat basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[fc] = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[static_cast<size_t>(pivots[pi])] = -m[pi][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rat> solve_linear(Mat m, std::vector<Rat> rhs) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  std::vector<int> pivots = rref(m);
  if (pivots.size() != n || (n && pivots.back() == static_cast<int>(n)))
    throw std::invalid_argument("singular linear system");
  std::vector<Rat> x(n);
  for (size_t i = 0; i < n; ++i) x[static_cast<size_t>(pivots[i])] = m[i][n];
  return x;
}

bool is_nonsingular(Mat m) {
  size_t n = m.size();
  return rref(m).size() == n;
}

}  // namespace

std::vector<long> primitive_null_marks(const std::vector<std::vector<long>>& matrix) {
  Mat m;
  for (const auto& row : matrix) {
    std::vector<Rat> r;
    for (long x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  Mat ker = kernel_basis(std::move(m));
  if (ker.size() != 1)
    throw std::invalid_argument("matrix kernel is " + std::to_string(ker.size()) +
                                "-dimensional, expected exactly 1 (not affine type)");
  std::vector<Rat>& v = ker[0];
  mpz_class lcm_den(1);
  for (const auto& x : v) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    lcm_den = l;
  }
  std::vector<mpz_class> ints;
  for (const auto& x : v) {
    Rat scaled = x * Rat(lcm_den);
    ints.push_back(scaled.get_num());
  }
  mpz_class g(0);
  for (const auto& z : ints) {
    mpz_class t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    g = t;
  }
  if (g == 0) throw std::invalid_argument("null vector is zero");
  bool all_neg = std::all_of(ints.begin(), ints.end(), [](const mpz_class& z) { return z < 0; });
  std::vector<long> marks;
  for (const auto& z : ints) {
    mpz_class red = z / g;
    if (all_neg) red = -red;
    if (red <= 0) throw std::invalid_argument("affine null vector is not positive");
    if (!red.fits_slong_p()) throw std::overflow_error("mark too large");
    marks.push_back(red.get_si());
  }
  return marks;
}

// ---- AlgebraData -------------------------------------------------------------

bool AlgebraData::is_odd(int i) const {
  return std::binary_search(theta_.begin(), theta_.end(), i);
}

void AlgebraData::finalize() {
  size_t nodes = matrix_.size();
  if (nodes == 0) throw std::invalid_argument("empty Cartan matrix");
  for (const auto& row : matrix_)
    if (row.size() != nodes) throw std::invalid_argument("Cartan matrix is not square");
  for (size_t i = 0; i < nodes; ++i) {
    if (matrix_[i][i] != 2) throw std::invalid_argument("Cartan diagonal entry must be 2");
    for (size_t j = 0; j < nodes; ++j) {
      if (i != j && matrix_[i][j] > 0)
        throw std::invalid_argument("positive off-diagonal Cartan entry");
      if ((matrix_[i][j] == 0) != (matrix_[j][i] == 0))
        throw std::invalid_argument("Cartan zero pattern is not symmetric");
    }
  }
  if (d_.size() != nodes) throw std::invalid_argument("symmetrizer length mismatch");
  for (const auto& di : d_)
    if (di != Rat(1, 2) && di != 1 && di != 2)
      throw std::invalid_argument("symmetrizer entries must be 1/2, 1 or 2, got " + di.get_str());
  for (size_t i = 0; i < nodes; ++i)
    for (size_t j = 0; j < nodes; ++j)
      if (d_[i] * matrix_[i][j] != d_[j] * matrix_[j][i])
        throw std::invalid_argument("matrix is not symmetrized by d");

  std::sort(theta_.begin(), theta_.end());
  if (std::adjacent_find(theta_.begin(), theta_.end()) != theta_.end())
    throw std::invalid_argument("repeated odd node");
  for (int t : theta_) {
    if (t < 0 || t >= static_cast<int>(nodes)) throw std::invalid_argument("odd node out of range");
    if (d_[static_cast<size_t>(t)] != Rat(1, 2))
      throw std::invalid_argument("odd simple roots must have squared length 1");
    for (size_t j = 0; j < nodes; ++j)
      if (matrix_[static_cast<size_t>(t)][j] % 2 != 0)
        throw std::invalid_argument("row of an odd node must have even entries");
  }

  std::vector<long> computed = primitive_null_marks(matrix_);
  if (marks_.empty())
    marks_ = computed;
  else if (marks_ != computed)
    throw std::invalid_argument("supplied marks are not the primitive null vector");

  gram_.assign(nodes + 1, std::vector<Rat>(nodes + 1, Rat(0)));
  gram_[0][1] = d_[0];
  gram_[1][0] = d_[0];
  for (size_t i = 0; i < nodes; ++i)
    for (size_t j = 0; j < nodes; ++j) gram_[i + 1][j + 1] = d_[i] * matrix_[i][j];
  if (!is_nonsingular(gram_))
    throw std::invalid_argument("form on {lambda0, simple roots} is singular");

  if (nodes >= 2) {
    Mat finite(nodes - 1, std::vector<Rat>(nodes - 1));
    for (size_t i = 1; i < nodes; ++i)
      for (size_t j = 1; j < nodes; ++j) finite[i - 1][j - 1] = Rat(matrix_[i][j]);
    if (!is_nonsingular(finite))
      throw std::invalid_argument("finite-part Cartan submatrix is singular");
  }
}

AlgebraData AlgebraData::from_parts(std::string name, std::vector<std::vector<long>> matrix,
                                    std::vector<int> theta, std::optional<std::vector<long>> marks,
                                    std::vector<Rat> d) {
  AlgebraData a;
  a.name_ = std::move(name);
  a.matrix_ = std::move(matrix);
  a.theta_ = std::move(theta);
  if (marks) a.marks_ = std::move(*marks);
  a.d_ = std::move(d);
  a.finalize();
  return a;
}

AlgebraData AlgebraData::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad algebra JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("algebra JSON must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "name" && key != "matrix" && key != "theta" && key != "marks" && key != "d")
      throw std::invalid_argument("unknown algebra JSON key '" + key + "'");
  if (!j.contains("matrix") || !j.contains("theta") || !j.contains("d"))
    throw std::invalid_argument("algebra JSON needs 'matrix', 'theta' and 'd'");
  try {
    std::string name = j.value("name", std::string());
    auto matrix = j.at("matrix").get<std::vector<std::vector<long>>>();
    auto theta = j.at("theta").get<std::vector<int>>();
    std::optional<std::vector<long>> marks;
    if (j.contains("marks")) marks = j.at("marks").get<std::vector<long>>();
    std::vector<Rat> d;
    for (const auto& item : j.at("d")) {
      if (item.is_number_integer())
        d.push_back(Rat(item.get<long>()));
      else
        d.push_back(rat_from_string(item.get<std::string>()));
    }
    return from_parts(std::move(name), std::move(matrix), std::move(theta), std::move(marks),
                      std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad algebra JSON: ") + e.what());
  }
}

std::string AlgebraData::to_json() const {
  nlohmann::ordered_json j;
  if (!name_.empty()) j["name"] = name_;
  j["matrix"] = matrix_;
  j["theta"] = theta_;
  j["marks"] = marks_;
  std::vector<std::string> d;
  for (const auto& x : d_) d.push_back(x.get_str());
  j["d"] = d;
  return j.dump();
}

Weight AlgebraData::lambda0() const {
  Weight w(node_count());
  w.c[0] = 1;
  return w;
}

Weight AlgebraData::alpha(int i) const {
  if (i < 0 || i >= node_count()) throw std::out_of_range("simple root index");
  Weight w(node_count());
  w.alpha_coeff(i) = 1;
  return w;
}

Rat AlgebraData::pairing(const Weight& x, const Weight& y) const {
  size_t dim = gram_.size();
  if (x.c.size() != dim || y.c.size() != dim)
    throw std::invalid_argument("weight has wrong coordinate count");
  Rat acc(0);
  for (size_t p = 0; p < dim; ++p) {
    if (x.c[p] == 0) continue;
    Rat row(0);
    for (size_t q = 0; q < dim; ++q)
      if (y.c[q] != 0) row += gram_[p][q] * y.c[q];
    acc += x.c[p] * row;
  }
  return acc;
}

Rat AlgebraData::dynkin_label(const Weight& w, int i) const {
  return pairing(w, alpha(i)) / d_[static_cast<size_t>(i)];
}

std::vector<Rat> AlgebraData::dynkin_labels(const Weight& w) const {
  std::vector<Rat> out;
  for (int i = 0; i < node_count(); ++i) out.push_back(dynkin_label(w, i));
  return out;
}

bool AlgebraData::integrable_dominant(const Weight& w, std::string* why) const {
  for (int i = 0; i < node_count(); ++i) {
    Rat l = dynkin_label(w, i);
    if (!is_integer(l) || l < 0) {
      if (why)
        *why = "label at node " + std::to_string(i) + " is " + l.get_str() +
               ", need a nonnegative integer";
      return false;
    }
    if (is_odd(i) && parity(l) != 0) {
      if (why)
        *why = "label at node " + std::to_string(i) + " is " + l.get_str() +
               ", need an even value at an odd node";
      return false;
    }
  }
  return true;
}

Rat AlgebraData::lambda0_coefficient(const std::vector<Rat>& labels) const {
  if (static_cast<int>(labels.size()) != node_count())
    throw std::invalid_argument("expected " + std::to_string(node_count()) + " labels");
  Rat acc(0);
  for (int i = 0; i < node_count(); ++i)
    acc += d_[static_cast<size_t>(i)] * marks_[static_cast<size_t>(i)] * labels[static_cast<size_t>(i)];
  return acc / (d_[0] * marks_[0]);
}

Weight AlgebraData::weight_from_labels(const std::vector<Rat>& labels) const {
  Rat clam = lambda0_coefficient(labels);
  int n = rank();
  Weight w(node_count());
  w.c[0] = clam;
  if (n >= 1) {
    Mat finite(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    std::vector<Rat> rhs(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) finite[i - 1][j - 1] = Rat(a(i, j));
      rhs[static_cast<size_t>(i - 1)] = labels[static_cast<size_t>(i)];
    }
    std::vector<Rat> coords = solve_linear(std::move(finite), std::move(rhs));
    for (int j = 1; j <= n; ++j) w.alpha_coeff(j) = coords[static_cast<size_t>(j - 1)];
  }
  // alpha_0 coordinate stays 0; the remaining label equation is implied by
  // the null-root identity, checked here defensively.
  for (int i = 0; i < node_count(); ++i)
    if (dynkin_label(w, i) != labels[static_cast<size_t>(i)])
      throw std::logic_error("label reconstruction failed at node " + std::to_string(i));
  return w;
}

// ---- catalog -----------------------------------------------------------------

namespace {

std::vector<Rat> unit_vec(int dim, int k, const Rat& scale) {
  std::vector<Rat> v(static_cast<size_t>(dim), Rat(0));
  v[static_cast<size_t>(k)] = scale;
  return v;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat acc(0);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

AlgebraData from_realization(const std::string& name, const std::vector<std::vector<Rat>>& roots,
                             std::vector<int> theta) {
  size_t nodes = roots.size();
  std::vector<std::vector<long>> matrix(nodes, std::vector<long>(nodes));
  std::vector<Rat> d(nodes);
  for (size_t i = 0; i < nodes; ++i) {
    Rat norm = dot(roots[i], roots[i]);
    d[i] = norm / 2;
    for (size_t j = 0; j < nodes; ++j)
      matrix[i][j] = to_long(Rat(2 * dot(roots[i], roots[j]) / norm));
  }
  return AlgebraData::from_parts(name, std::move(matrix), std::move(theta), std::nullopt,
                                 std::move(d));
}

// Chain part shared by every family: alpha_r = e_r - e_{r+1} for r < n,
// alpha_n = e_n, all in Q^n.
std::vector<std::vector<Rat>> tail_chain(int n) {
  std::vector<std::vector<Rat>> roots;
  for (int r = 1; r < n; ++r) {
    std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(r - 1)] = 1;
    v[static_cast<size_t>(r)] = -1;
    roots.push_back(std::move(v));
  }
  roots.push_back(unit_vec(n, n - 1, Rat(1)));
  return roots;
}

AlgebraData build_b_super(int n) {
  std::vector<std::vector<Rat>> roots{unit_vec(n, 0, Rat(-2))};
  for (auto& r : tail_chain(n)) roots.push_back(std::move(r));
  return from_realization("B1_0_" + std::to_string(n), roots, {n});
}

AlgebraData build_a2_super(int n) {
  std::vector<Rat> alpha0(static_cast<size_t>(n), Rat(0));
  alpha0[0] = -1;
  alpha0[1] = -1;
  std::vector<std::vector<Rat>> roots{alpha0};
  for (auto& r : tail_chain(n)) roots.push_back(std::move(r));
  return from_realization("A2_0_" + std::to_string(2 * n - 1), roots, {n});
}

AlgebraData build_short_zero(const std::string& name, int n, std::vector<int> theta) {
  std::vector<std::vector<Rat>> roots{unit_vec(n, 0, Rat(-1))};
  for (auto& r : tail_chain(n)) roots.push_back(std::move(r));
  return from_realization(name, roots, std::move(theta));
}

AlgebraData build_c_super(int n) {
  return build_short_zero("C2_" + std::to_string(n + 1), n, {0, n});
}

AlgebraData build_a4_super(int n) {
  return build_short_zero("A4_0_" + std::to_string(2 * n), n, {0});
}

struct CatalogTables {
  std::map<std::string, AlgebraData> entries;
  std::vector<std::string> order;
  std::map<std::string, std::string> partner;

  void add(AlgebraData a) {
    order.push_back(a.name());
    entries.emplace(a.name(), std::move(a));
  }

  void add_even_copy(const std::string& super_name, const std::string& even_name) {
    const AlgebraData& s = entries.at(super_name);
    add(AlgebraData::from_parts(even_name, s.matrix(), {}, s.marks(), s.d()));
    partner.emplace(super_name, even_name);
  }
};

const CatalogTables& tables() {
  static const CatalogTables t = [] {
    CatalogTables t;
    for (int n = 1; n <= 6; ++n) t.add(build_b_super(n));
    for (int n = 2; n <= 6; ++n) t.add(build_a2_super(n));
    for (int n = 1; n <= 6; ++n) t.add(build_c_super(n));
    for (int n = 1; n <= 6; ++n) t.add(build_a4_super(n));
    for (int n = 1; n <= 6; ++n)
      t.add_even_copy("B1_0_" + std::to_string(n), "A2_" + std::to_string(2 * n));
    t.add_even_copy("A2_0_3", "C1_2");
    for (int n = 3; n <= 6; ++n)
      t.add_even_copy("A2_0_" + std::to_string(2 * n - 1), "B1_" + std::to_string(n));
    t.add_even_copy("C2_2", "A1_1");
    for (int n = 2; n <= 6; ++n) {
      std::string name = "D2_" + std::to_string(n + 1);
      t.add_even_copy("C2_" + std::to_string(n + 1), name);
    }
    return t;
  }();
  return t;
}

}  // namespace

std::vector<std::string> catalog_names() { return tables().order; }

bool catalog_has(const std::string& name) { return tables().entries.count(name) != 0; }

AlgebraData catalog(const std::string& name) {
  auto it = tables().entries.find(name);
  if (it == tables().entries.end())
    throw std::invalid_argument("unknown catalog algebra '" + name + "'");
  return it->second;
}

std::string partner_name(const std::string& super_name) {
  auto it = tables().partner.find(super_name);
  if (it == tables().partner.end())
    throw std::domain_error("algebra '" + super_name + "' has no transmutation partner");
  return it->second;
}

AlgebraData partner(const AlgebraData& data) { return catalog(partner_name(data.name())); }

}  // namespace qaffine
