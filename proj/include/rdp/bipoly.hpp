// Sparse exact polynomials in (x,y) and (X,Y,Z) over a field tower, the SL2
// substitution action, Reynolds averaging, and exact linear algebra.
#pragma once

#include <array>
#include <map>
#include <sstream>
#include <vector>

#include "fieldtower.hpp"

namespace rdp {

struct OrderNotInvertible : std::runtime_error {
  explicit OrderNotInvertible(const std::string& m) : std::runtime_error("OrderNotInvertible: " + m) {}
};
struct DegreeGuard : std::runtime_error {
  explicit DegreeGuard(const std::string& m) : std::runtime_error("DegreeGuard: " + m) {}
};

constexpr int kMaxPolyDegree = 256;

// graded lexicographic, x > y; operator() returns "a before b" for map
// ordering, arranged so iteration runs from the grlex-largest term down.
struct GrlexDesc2 {
  bool operator()(const std::array<int, 2>& a, const std::array<int, 2>& b) const {
    int da = a[0] + a[1], db = b[0] + b[1];
    if (da != db) return da > db;
    return a[0] > b[0];
  }
};
struct GrlexDesc3 {
  bool operator()(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    if (a[0] != b[0]) return a[0] > b[0];
    return a[1] > b[1];
  }
};

class BivariatePoly {
 public:
  using Exp = std::array<int, 2>;
  using Terms = std::map<Exp, FieldElement, GrlexDesc2>;

  BivariatePoly() = default;
  explicit BivariatePoly(TowerPtr t) : t_(std::move(t)) {}
  static BivariatePoly monomial(const TowerPtr& t, int i, int j, const FieldElement& c) {
    BivariatePoly p(t);
    p.add_term(i, j, c);
    return p;
  }
  static BivariatePoly monomial(const TowerPtr& t, int i, int j, const Rat& c = 1) {
    return monomial(t, i, j, FieldElement(t, c));
  }
  static BivariatePoly x(const TowerPtr& t) { return monomial(t, 1, 0); }
  static BivariatePoly y(const TowerPtr& t) { return monomial(t, 0, 1); }
  static BivariatePoly constant(const TowerPtr& t, const FieldElement& c) { return monomial(t, 0, 0, c); }

  const TowerPtr& tower() const { return t_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first[0] + terms_.begin()->first[1]; }

  void add_term(int i, int j, const FieldElement& c) {
    if (i + j > kMaxPolyDegree) throw DegreeGuard("bivariate degree > 256");
    if (c.is_zero()) return;
    Exp e{i, j};
    auto it = terms_.find(e);
    if (it == terms_.end()) terms_.emplace(e, c);
    else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FieldElement coeff(int i, int j) const {
    auto it = terms_.find(Exp{i, j});
    return it == terms_.end() ? FieldElement::zero(t_) : it->second;
  }

  BivariatePoly operator+(const BivariatePoly& o) const {
    chk(o);
    BivariatePoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e[0], e[1], c);
    return r;
  }
  BivariatePoly operator-(const BivariatePoly& o) const {
    chk(o);
    BivariatePoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e[0], e[1], -c);
    return r;
  }
  BivariatePoly operator-() const {
    BivariatePoly r(t_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  BivariatePoly operator*(const BivariatePoly& o) const {
    chk(o);
    BivariatePoly r(t_);
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_) r.add_term(e1[0] + e2[0], e1[1] + e2[1], c1 * c2);
    return r;
  }
  BivariatePoly operator*(const FieldElement& c) const {
    BivariatePoly r(t_);
    if (c.is_zero()) return r;
    for (auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
    return r;
  }
  BivariatePoly operator*(const Rat& q) const { return *this * FieldElement(t_, q); }
  bool operator==(const BivariatePoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BivariatePoly& o) const { return !(*this == o); }

  BivariatePoly pow(int e) const {
    BivariatePoly r = constant(t_, FieldElement::one(t_));
    BivariatePoly b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // apply a field automorphism to every coefficient
  BivariatePoly map_coeffs(const Automorphism& phi) const {
    BivariatePoly r(t_);
    for (auto& [e, c] : terms_) r.add_term(e[0], e[1], phi(c));
    return r;
  }

  BivariatePoly lift(const TowerPtr& bigger) const {
    BivariatePoly r(bigger);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, c.lift(bigger));
    return r;
  }

  // partial derivatives
  BivariatePoly dx() const {
    BivariatePoly r(t_);
    for (auto& [e, c] : terms_)
      if (e[0] > 0) r.add_term(e[0] - 1, e[1], c * Rat(e[0]));
    return r;
  }
  BivariatePoly dy() const {
    BivariatePoly r(t_);
    for (auto& [e, c] : terms_)
      if (e[1] > 0) r.add_term(e[0], e[1] - 1, c * Rat(e[1]));
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      std::string cs = c.str();
      bool neg = cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos &&
                 cs.find('(') == std::string::npos;
      std::string mono;
      if (e[0] > 0) mono += "x" + (e[0] > 1 ? "^" + std::to_string(e[0]) : "");
      if (e[1] > 0) mono += std::string("y") + (e[1] > 1 ? "^" + std::to_string(e[1]) : "");
      std::string body;
      bool complex_coeff = cs.find_first_of("+-", 1) != std::string::npos || cs.find('*') != std::string::npos;
      if (mono.empty()) body = complex_coeff ? "(" + cs + ")" : cs;
      else if (cs == "1") body = mono;
      else if (cs == "-1") { body = mono; neg = true; cs = "1"; }
      else body = (complex_coeff || cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) + mono;
      if (first) {
        os << (neg && body == mono ? "-" + body : body);
        first = false;
      } else if (neg) {
        os << " - " << (body == mono ? body : body.substr(1));
      } else {
        os << " + " << body;
      }
    }
    return os.str();
  }

 private:
  void chk(const BivariatePoly& o) const {
    if (t_ != o.t_ && !t_->same_description(*o.t_)) throw TowerMismatch("polynomials over different towers");
  }
  TowerPtr t_;
  Terms terms_;
};

inline BivariatePoly operator*(const FieldElement& c, const BivariatePoly& p) { return p * c; }

class TrivariatePoly {
 public:
  using Exp = std::array<int, 3>;
  using Terms = std::map<Exp, FieldElement, GrlexDesc3>;

  TrivariatePoly() = default;
  explicit TrivariatePoly(TowerPtr t, std::array<int, 3> weights = {1, 1, 1})
      : t_(std::move(t)), w_(weights) {}
  static TrivariatePoly monomial(const TowerPtr& t, int a, int b, int c, const FieldElement& co) {
    TrivariatePoly p(t);
    p.add_term(a, b, c, co);
    return p;
  }
  static TrivariatePoly monomial(const TowerPtr& t, int a, int b, int c, const Rat& co = 1) {
    return monomial(t, a, b, c, FieldElement(t, co));
  }

  const TowerPtr& tower() const { return t_; }
  const Terms& terms() const { return terms_; }
  const std::array<int, 3>& weights() const { return w_; }
  void set_weights(std::array<int, 3> w) { w_ = w; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int a, int b, int c, const FieldElement& co) {
    if (a + b + c > kMaxPolyDegree) throw DegreeGuard("trivariate degree > 256");
    if (co.is_zero()) return;
    Exp e{a, b, c};
    auto it = terms_.find(e);
    if (it == terms_.end()) terms_.emplace(e, co);
    else {
      it->second = it->second + co;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  FieldElement coeff(int a, int b, int c) const {
    auto it = terms_.find(Exp{a, b, c});
    return it == terms_.end() ? FieldElement::zero(t_) : it->second;
  }

  TrivariatePoly operator+(const TrivariatePoly& o) const {
    TrivariatePoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e[0], e[1], e[2], c);
    return r;
  }
  TrivariatePoly operator-(const TrivariatePoly& o) const {
    TrivariatePoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e[0], e[1], e[2], -c);
    return r;
  }
  TrivariatePoly operator*(const TrivariatePoly& o) const {
    TrivariatePoly r(t_, w_);
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_) r.add_term(e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], c1 * c2);
    return r;
  }
  TrivariatePoly operator*(const FieldElement& c) const {
    TrivariatePoly r(t_, w_);
    if (c.is_zero()) return r;
    for (auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
    return r;
  }
  TrivariatePoly operator*(const Rat& q) const { return *this * FieldElement(t_, q); }
  bool operator==(const TrivariatePoly& o) const { return terms_ == o.terms_; }

  bool weighted_homogeneous(int* wdeg = nullptr) const {
    bool first = true;
    int d = 0;
    for (auto& [e, c] : terms_) {
      int w = e[0] * w_[0] + e[1] * w_[1] + e[2] * w_[2];
      if (first) { d = w; first = false; }
      else if (w != d) return false;
    }
    if (wdeg) *wdeg = d;
    return true;
  }

  TrivariatePoly lift(const TowerPtr& bigger) const {
    TrivariatePoly r(bigger, w_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, c.lift(bigger));
    return r;
  }

  // plain lex X > Y > Z print order (template/equation style)
  std::string str(const std::array<std::string, 3>& names = {"X", "Y", "Z"}) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exp, FieldElement>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : ts) {
      std::string cs = c.str();
      bool neg = cs.size() > 0 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
      std::string mono;
      for (int k = 0; k < 3; ++k)
        if (e[k] > 0) mono += names[k] + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
      bool complex_coeff = cs.find_first_of("+-", 1) != std::string::npos || cs.find('*') != std::string::npos;
      std::string body;
      if (mono.empty()) body = complex_coeff ? "(" + cs + ")" : cs;
      else if (cs == "1") body = mono;
      else if (cs == "-1") { body = mono; neg = true; }
      else body = (complex_coeff || cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) + mono;
      if (first) {
        if (neg && (body == mono)) os << "-" << body;
        else os << body;
        first = false;
      } else if (neg) {
        os << " - " << (body == mono ? body : body.substr(1));
      } else {
        os << " + " << body;
      }
    }
    return os.str();
  }

 private:
  TowerPtr t_;
  std::array<int, 3> w_{1, 1, 1};
  Terms terms_;
};

// 2x2 matrix over a tower.
struct Mat2 {
  FieldElement a, b, c, d;

  TowerPtr tower() const { return a.tower(); }
  static Mat2 identity(const TowerPtr& t) {
    return {FieldElement::one(t), FieldElement::zero(t), FieldElement::zero(t), FieldElement::one(t)};
  }
  static Mat2 diag(const FieldElement& u, const FieldElement& v) {
    auto t = u.tower();
    return {u, FieldElement::zero(t), FieldElement::zero(t), v};
  }
  static Mat2 anti_diag(const FieldElement& u, const FieldElement& v) {
    auto t = u.tower();
    return {FieldElement::zero(t), u, v, FieldElement::zero(t)};
  }
  FieldElement det() const { return a * d - b * c; }
  FieldElement trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inverse() const {
    FieldElement dt = det();
    FieldElement di = dt.inv();
    return {d * di, -b * di, -c * di, a * di};
  }
  Mat2 neg() const { return {-a, -b, -c, -d}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }
  Mat2 map_coeffs(const Automorphism& phi) const { return {phi(a), phi(b), phi(c), phi(d)}; }
  Mat2 lift(const TowerPtr& t) const { return {a.lift(t), b.lift(t), c.lift(t), d.lift(t)}; }
  std::string str() const {
    return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
  }
  // deterministic total order for canonical element lists
  std::string sort_key() const {
    return a.str() + "|" + b.str() + "|" + c.str() + "|" + d.str();
  }
};

// substitution action: (x,y) -> (x,y)*g, i.e. x -> a x + c y, y -> b x + d y
inline BivariatePoly act(const Mat2& g, const BivariatePoly& f) {
  auto t = f.tower();
  if (g.tower() != t && !g.tower()->same_description(*t)) throw TowerMismatch("act");
  BivariatePoly nx(t), ny(t);
  nx.add_term(1, 0, g.a);
  nx.add_term(0, 1, g.c);
  ny.add_term(1, 0, g.b);
  ny.add_term(0, 1, g.d);
  int dmax = std::max(0, f.degree());
  std::vector<BivariatePoly> px(dmax + 1), py(dmax + 1);
  px[0] = BivariatePoly::monomial(t, 0, 0);
  py[0] = BivariatePoly::monomial(t, 0, 0);
  for (int i = 1; i <= dmax; ++i) { px[i] = px[i - 1] * nx; py[i] = py[i - 1] * ny; }
  BivariatePoly r(t);
  for (auto& [e, c] : f.terms()) r = r + px[e[0]] * py[e[1]] * c;
  return r;
}

// F(A,B,C) expanded exactly
inline BivariatePoly substitute(const TrivariatePoly& F, const BivariatePoly& A, const BivariatePoly& B,
                                const BivariatePoly& C) {
  auto t = A.tower();
  if (F.tower() != t && !F.tower()->same_description(*t)) throw TowerMismatch("substitute");
  int ma = 0, mb = 0, mc = 0;
  for (auto& [e, co] : F.terms()) { ma = std::max(ma, e[0]); mb = std::max(mb, e[1]); mc = std::max(mc, e[2]); }
  std::vector<BivariatePoly> pa(ma + 1), pb(mb + 1), pc(mc + 1);
  pa[0] = pb[0] = pc[0] = BivariatePoly::monomial(t, 0, 0);
  for (int i = 1; i <= ma; ++i) pa[i] = pa[i - 1] * A;
  for (int i = 1; i <= mb; ++i) pb[i] = pb[i - 1] * B;
  for (int i = 1; i <= mc; ++i) pc[i] = pc[i - 1] * C;
  BivariatePoly r(t);
  for (auto& [e, co] : F.terms()) {
    BivariatePoly lifted = pa[e[0]] * pb[e[1]] * pc[e[2]];
    r = r + lifted * co.lift(t);
  }
  return r;
}

// exact Gaussian elimination; returns reduced-echelon basis of the right kernel
inline std::vector<std::vector<FieldElement>> kernel(std::vector<std::vector<FieldElement>> m, const TowerPtr& t) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  for (auto& r : m)
    if (r.size() != cols) throw std::runtime_error("kernel: ragged matrix");
  std::vector<long> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && m[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    FieldElement piv = m[rank][col].inv();
    for (size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * piv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      FieldElement f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
    }
    pivot_of_col[col] = (long)rank;
    ++rank;
  }
  std::vector<std::vector<FieldElement>> basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<FieldElement> v(cols, FieldElement::zero(t));
    v[free_col] = FieldElement::one(t);
    for (size_t col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0) v[col] = -m[pivot_of_col[col]][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline size_t matrix_rank(const std::vector<std::vector<FieldElement>>& m, const TowerPtr& t) {
  size_t cols = m.empty() ? 0 : m[0].size();
  return cols - kernel(m, t).size();
}

// group-model interface needed by the averaging operators; defined in groupmodels.hpp
class EtaleGroupModel;
const std::vector<Mat2>& model_elements(const EtaleGroupModel& g);

template <typename ElementRange>
BivariatePoly reynolds_over(const ElementRange& elems, const BivariatePoly& f) {
  auto t = f.tower();
  size_t n = 0;
  BivariatePoly sum(t);
  for (const Mat2& g : elems) {
    sum = sum + act(g, f);
    ++n;
  }
  long p = t->characteristic();
  if (p != 0 && (long)(n % p) == 0) throw OrderNotInvertible("group order divisible by the characteristic");
  return sum * Rat(1, (long)n);
}

// all monomials of total degree d, grlex-descending order
inline std::vector<std::array<int, 2>> monomials2(int d) {
  std::vector<std::array<int, 2>> v;
  for (int i = d; i >= 0; --i) v.push_back({i, d - i});
  return v;
}

// basis (row-reduced, deterministic) of the degree-d invariants of a matrix group
template <typename ElementRange>
std::vector<BivariatePoly> invariant_space_over(const ElementRange& elems, const TowerPtr& t, int d) {
  auto monos = monomials2(d);
  std::vector<BivariatePoly> images;
  for (auto& e : monos) images.push_back(reynolds_over(elems, BivariatePoly::monomial(t, e[0], e[1])));
  // row reduce coefficient vectors over the monomial support
  std::vector<std::vector<FieldElement>> rows;
  for (auto& f : images) {
    std::vector<FieldElement> r;
    for (auto& e : monos) r.push_back(f.coeff(e[0], e[1]));
    rows.push_back(std::move(r));
  }
  // Gaussian elimination keeping reduced rows
  size_t cols = monos.size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    FieldElement piv = rows[rank][col].inv();
    for (size_t j = 0; j < cols; ++j) rows[rank][j] = rows[rank][j] * piv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      FieldElement f = rows[i][col];
      for (size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
    }
    ++rank;
  }
  std::vector<BivariatePoly> basis;
  for (size_t i = 0; i < rank; ++i) {
    BivariatePoly f(t);
    for (size_t j = 0; j < cols; ++j)
      if (!rows[i][j].is_zero()) f.add_term(monos[j][0], monos[j][1], rows[i][j]);
    basis.push_back(std::move(f));
  }
  return basis;
}

// Molien series coefficients dim_d for d = 0..dmax:
//   (1/|G|) sum_g 1/det(1 - t g),  det(1 - t g) = 1 - tr(g) t + t^2 for det g = 1.
template <typename ElementRange>
std::vector<Rat> molien_series_over(const ElementRange& elems, const TowerPtr& t, int dmax) {
  std::vector<FieldElement> acc(dmax + 1, FieldElement::zero(t));
  size_t n = 0;
  for (const Mat2& g : elems) {
    FieldElement tr = g.trace();
    // series inverse of 1 - tr t + t^2: s_k = tr*s_{k-1} - s_{k-2}
    std::vector<FieldElement> s(dmax + 1, FieldElement::zero(t));
    s[0] = FieldElement::one(t);
    if (dmax >= 1) s[1] = tr;
    for (int k = 2; k <= dmax; ++k) s[k] = tr * s[k - 1] - s[k - 2];
    for (int k = 0; k <= dmax; ++k) acc[k] = acc[k] + s[k];
    ++n;
  }
  long p = t->characteristic();
  if (p != 0 && (long)(n % p) == 0) throw OrderNotInvertible("group order divisible by the characteristic");
  std::vector<Rat> out;
  for (int k = 0; k <= dmax; ++k) {
    FieldElement v = acc[k] / Rat((long)n);
    auto r = v.as_rational();
    if (!r) throw std::runtime_error("molien: non-rational coefficient");
    out.push_back(*r);
  }
  return out;
}

}  // namespace rdp
