// Exact arithmetic in towers of simple field extensions over Q or F_p,
// with explicit automorphisms and finite Galois groups.
//
// A tower is an ordered list of levels K_0 c K_1 c ... c K_r where K_0 is Q
// or F_p and each level adjoins a root of a monic irreducible polynomial with
// coefficients in the previous level.  Elements are nested coefficient
// vectors, fully reduced, so equality is structural equality.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rdp {

using Rat = mpq_class;

struct NonMonic : std::runtime_error {
  explicit NonMonic(const std::string& m) : std::runtime_error("NonMonic: " + m) {}
};
struct ReduciblePolynomial : std::runtime_error {
  explicit ReduciblePolynomial(const std::string& m) : std::runtime_error("ReduciblePolynomial: " + m) {}
};
struct CannotDecide : std::runtime_error {
  explicit CannotDecide(const std::string& m) : std::runtime_error("CannotDecide: " + m) {}
};
struct CharacteristicDividesN : std::runtime_error {
  explicit CharacteristicDividesN(const std::string& m) : std::runtime_error("CharacteristicDividesN: " + m) {}
};
struct MissingRootOfUnity : std::runtime_error {
  explicit MissingRootOfUnity(const std::string& m) : std::runtime_error("MissingRootOfUnity: " + m) {}
};
struct DivisionByZero : std::runtime_error {
  explicit DivisionByZero(const std::string& m) : std::runtime_error("DivisionByZero: " + m) {}
};
struct TowerMismatch : std::runtime_error {
  explicit TowerMismatch(const std::string& m) : std::runtime_error("TowerMismatch: " + m) {}
};
struct NotAnAutomorphism : std::runtime_error {
  explicit NotAnAutomorphism(const std::string& m) : std::runtime_error("NotAnAutomorphism: " + m) {}
};
struct ClosureTooLarge : std::runtime_error {
  explicit ClosureTooLarge(const std::string& m) : std::runtime_error("ClosureTooLarge: " + m) {}
};

// Nested coefficient value.  Depth 0 holds a rational; depth j>0 holds
// exactly deg(level j) children of depth j-1.
struct FVal {
  Rat q;
  std::vector<FVal> kids;
  bool leaf() const { return kids.empty(); }
  bool operator==(const FVal& o) const {
    if (leaf() != o.leaf()) return false;
    if (leaf()) return q == o.q;
    return kids == o.kids;
  }
};

enum class LevelKind { Cyclotomic, QuadraticRational, CubicRational, ArtinSchreier, Other };

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;
class FieldElement;
class Automorphism;

namespace detail {

inline mpz_class num(const Rat& q) { return q.get_num(); }
inline mpz_class den(const Rat& q) { return q.get_den(); }

// c = s^2 * r with r a squarefree integer (sign kept in r).  Throws if a
// factor survives trial division past the bound.
inline std::pair<Rat, long> squarefree_decompose(const Rat& c) {
  if (c == 0) throw std::runtime_error("squarefree_decompose: zero");
  mpz_class n = num(c) * den(c);  // c = n / den^2
  Rat s(1, den(c));
  long r = 1;
  if (n < 0) { r = -1; n = -n; }
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (p > 1000000) throw CannotDecide("squarefree_decompose: factor too large");
    unsigned e = 0;
    while (n % p == 0) { n /= p; ++e; }
    for (unsigned i = 0; i < e / 2; ++i) s *= Rat(p);
    if (e % 2) r *= p.get_si();
  }
  if (n > 1) {
    if (n > 1000000000) throw CannotDecide("squarefree_decompose: factor too large");
    r *= n.get_si();
  }
  return {s, r};
}

inline bool rat_is_square(const Rat& c, Rat* root = nullptr) {
  if (c == 0) { if (root) *root = 0; return true; }
  if (c < 0) return false;
  mpz_class n = num(c), d = den(c), rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  if (rn * rn == n && rd * rd == d) { if (root) *root = Rat(rn, rd); return true; }
  return false;
}

// positive integer power
inline Rat rat_pow(const Rat& a, unsigned long e) {
  Rat r = 1, b = a;
  while (e) { if (e & 1) r *= b; b *= b; e >>= 1; }
  return r;
}

inline long mod_pow(long b, long e, long m) {
  long r = 1 % m; b %= m; if (b < 0) b += m;
  while (e) { if (e & 1) r = (r * b) % m; b = (b * b) % m; e >>= 1; }
  return r;
}

inline long mul_order_mod(long a, long n) {
  long x = a % n, o = 1;
  if (x < 0) x += n;
  while (x != 1) { x = (x * (a % n)) % n; ++o; if (o > n) throw std::runtime_error("not a unit"); }
  return o;
}

// integer polynomial division helpers for cyclotomic polynomials
inline std::vector<mpz_class> zpoly_div_exact(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> q(a.size() - b.size() + 1, 0);
  for (long i = (long)a.size() - 1; i >= (long)b.size() - 1; --i) {
    mpz_class c = a[i] / b.back();
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
  }
  for (auto& c : a)
    if (c != 0) throw std::runtime_error("zpoly_div_exact: not divisible");
  return q;
}

inline std::vector<mpz_class> cyclotomic_z(long n) {
  std::vector<mpz_class> f(n + 1, 0);
  f[0] = -1; f[n] = 1;  // t^n - 1
  for (long d = 1; d < n; ++d)
    if (n % d == 0) f = zpoly_div_exact(f, cyclotomic_z(d));
  return f;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) { r -= r / p; while (n % p == 0) n /= p; }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace detail

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Level {
    std::string name;
    std::vector<FVal> minpoly;  // c_0..c_{d-1}, coefficients at the previous level; monic t^d + sum c_j t^j
    int degree = 0;
    LevelKind kind = LevelKind::Other;
  };
  struct RootFact { long n; int level_when; FVal val; };          // primitive n-th root of unity
  struct SqrtFact { long r; int level_when; FVal val; };          // val^2 == r, r squarefree integer

  static TowerPtr rationals() { return TowerPtr(new FieldTower(0)); }
  static TowerPtr prime_field(long p) {
    if (p < 2) throw std::runtime_error("prime_field: p must be prime");
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) throw std::runtime_error("prime_field: p must be prime");
    return TowerPtr(new FieldTower(p));
  }

  long characteristic() const { return p_; }
  int num_levels() const { return (int)levels_.size(); }
  const Level& level(int i) const { return levels_[i]; }
  const std::vector<Level>& levels() const { return levels_; }

  long degree() const {
    long d = 1;
    for (auto& l : levels_) d *= l.degree;
    return d;
  }

  bool same_description(const FieldTower& o) const {
    if (p_ != o.p_ || levels_.size() != o.levels_.size()) return false;
    for (size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i].name != o.levels_[i].name || levels_[i].degree != o.levels_[i].degree ||
          !(levels_[i].minpoly == o.levels_[i].minpoly))
        return false;
    return true;
  }
  // o extends *this by zero or more levels
  bool prefix_of(const FieldTower& o) const {
    if (p_ != o.p_ || levels_.size() > o.levels_.size()) return false;
    for (size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i].name != o.levels_[i].name || !(levels_[i].minpoly == o.levels_[i].minpoly)) return false;
    return true;
  }

  // ---- FVal arithmetic at a given level (coefficients fully reduced) ----

  FVal zero(int lvl) const {
    if (lvl == 0) return FVal{Rat(0), {}};
    FVal v; v.kids.assign(levels_[lvl - 1].degree, zero(lvl - 1));
    return v;
  }
  FVal from_rat(int lvl, const Rat& q) const {
    if (lvl == 0) return FVal{norm_base(q), {}};
    FVal v = zero(lvl);
    v.kids[0] = from_rat(lvl - 1, q);
    return v;
  }
  FVal one(int lvl) const { return from_rat(lvl, 1); }
  // the generator of level `lvl` (1-based: generator of levels_[lvl-1]) as an element at level `lvl`
  FVal gen(int lvl) const {
    FVal v = zero(lvl);
    v.kids[1] = one(lvl - 1);
    return v;
  }
  FVal embed(int from_lvl, const FVal& v, int to_lvl) const {
    FVal r = v;
    for (int l = from_lvl + 1; l <= to_lvl; ++l) {
      FVal w = zero(l);
      w.kids[0] = r;
      r = w;
    }
    return r;
  }

  bool is_zero(int lvl, const FVal& a) const {
    if (lvl == 0) return a.q == 0;
    for (auto& k : a.kids)
      if (!is_zero(lvl - 1, k)) return false;
    return true;
  }

  FVal add(int lvl, const FVal& a, const FVal& b) const {
    if (lvl == 0) return FVal{norm_base(a.q + b.q), {}};
    FVal r = a;
    for (size_t i = 0; i < r.kids.size(); ++i) r.kids[i] = add(lvl - 1, r.kids[i], b.kids[i]);
    return r;
  }
  FVal neg(int lvl, const FVal& a) const {
    if (lvl == 0) return FVal{norm_base(-a.q), {}};
    FVal r = a;
    for (auto& k : r.kids) k = neg(lvl - 1, k);
    return r;
  }
  FVal sub(int lvl, const FVal& a, const FVal& b) const { return add(lvl, a, neg(lvl, b)); }

  FVal mul(int lvl, const FVal& a, const FVal& b) const {
    if (lvl == 0) return FVal{norm_base(a.q * b.q), {}};
    int d = levels_[lvl - 1].degree;
    std::vector<FVal> conv(2 * d - 1, zero(lvl - 1));
    for (int i = 0; i < d; ++i) {
      if (is_zero(lvl - 1, a.kids[i])) continue;
      for (int j = 0; j < d; ++j) {
        if (is_zero(lvl - 1, b.kids[j])) continue;
        conv[i + j] = add(lvl - 1, conv[i + j], mul(lvl - 1, a.kids[i], b.kids[j]));
      }
    }
    reduce_top(lvl, conv);
    FVal r; r.kids.assign(conv.begin(), conv.begin() + d);
    return r;
  }

  // reduce a coefficient vector (length >= degree) modulo the monic minpoly of level `lvl`
  void reduce_top(int lvl, std::vector<FVal>& c) const {
    int d = levels_[lvl - 1].degree;
    const auto& mp = levels_[lvl - 1].minpoly;
    for (int i = (int)c.size() - 1; i >= d; --i) {
      if (is_zero(lvl - 1, c[i])) continue;
      FVal lead = c[i];
      c[i] = zero(lvl - 1);
      for (int j = 0; j < d; ++j)
        c[i - d + j] = sub(lvl - 1, c[i - d + j], mul(lvl - 1, lead, mp[j]));
    }
    c.resize(d, zero(lvl - 1));
  }

  FVal inv(int lvl, const FVal& a) const {
    if (is_zero(lvl, a)) throw DivisionByZero("inverse of zero");
    if (lvl == 0) return FVal{base_inv(a.q), {}};
    // extended euclid of minpoly and a over K_{lvl-1}
    int d = levels_[lvl - 1].degree;
    std::vector<FVal> r0 = levels_[lvl - 1].minpoly;
    r0.push_back(one(lvl - 1));  // monic completion
    std::vector<FVal> r1 = a.kids;
    trim(lvl - 1, r1);
    std::vector<FVal> t0{zero(lvl - 1)}, t1{one(lvl - 1)};
    while (pdeg(lvl - 1, r1) > 0) {
      auto [q, rem] = pdivmod(lvl - 1, r0, r1);
      r0 = r1; r1 = rem;
      auto t2 = psub(lvl - 1, t0, pmul(lvl - 1, q, t1));
      t0 = t1; t1 = t2;
      if (pdeg(lvl - 1, r1) < 0) throw std::runtime_error("inv: minpoly not irreducible");
    }
    FVal c = inv(lvl - 1, r1[0]);
    std::vector<FVal> res(d, zero(lvl - 1));
    for (size_t i = 0; i < t1.size() && i < (size_t)d; ++i) res[i] = mul(lvl - 1, t1[i], c);
    FVal out; out.kids = res;
    return out;
  }

  FVal div(int lvl, const FVal& a, const FVal& b) const { return mul(lvl, a, inv(lvl, b)); }

  FVal pow(int lvl, FVal a, mpz_class e) const {
    if (e < 0) { a = inv(lvl, a); e = -e; }
    FVal r = one(lvl);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(lvl, r, a);
      a = mul(lvl, a, a);
      e >>= 1;
    }
    return r;
  }

  // ---- polynomial helpers over K_lvl (coefficient vectors, little-endian) ----

  int pdeg(int lvl, const std::vector<FVal>& f) const {
    for (int i = (int)f.size() - 1; i >= 0; --i)
      if (!is_zero(lvl, f[i])) return i;
    return -1;
  }
  void trim(int lvl, std::vector<FVal>& f) const { f.resize(std::max(0, pdeg(lvl, f) + 1), zero(lvl)); }

  std::vector<FVal> pmul(int lvl, const std::vector<FVal>& a, const std::vector<FVal>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<FVal> c(a.size() + b.size() - 1, zero(lvl));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        c[i + j] = add(lvl, c[i + j], mul(lvl, a[i], b[j]));
    trim(lvl, c);
    return c;
  }
  std::vector<FVal> psub(int lvl, std::vector<FVal> a, const std::vector<FVal>& b) const {
    if (a.size() < b.size()) a.resize(b.size(), zero(lvl));
    for (size_t i = 0; i < b.size(); ++i) a[i] = sub(lvl, a[i], b[i]);
    trim(lvl, a);
    return a;
  }
  std::pair<std::vector<FVal>, std::vector<FVal>> pdivmod(int lvl, std::vector<FVal> a,
                                                          const std::vector<FVal>& b) const {
    int db = pdeg(lvl, b);
    if (db < 0) throw DivisionByZero("poly division by zero");
    FVal li = inv(lvl, b[db]);
    std::vector<FVal> q(std::max<size_t>(1, a.size()), zero(lvl));
    trim(lvl, a);
    while (pdeg(lvl, a) >= db) {
      int da = pdeg(lvl, a);
      FVal c = mul(lvl, a[da], li);
      q[da - db] = c;
      for (int j = 0; j <= db; ++j) a[da - db + j] = sub(lvl, a[da - db + j], mul(lvl, c, b[j]));
      trim(lvl, a);
    }
    trim(lvl, q);
    return {q, a};
  }
  std::vector<FVal> pmod(int lvl, const std::vector<FVal>& a, const std::vector<FVal>& b) const {
    return pdivmod(lvl, a, b).second;
  }
  std::vector<FVal> pgcd(int lvl, std::vector<FVal> a, std::vector<FVal> b) const {
    trim(lvl, a); trim(lvl, b);
    while (pdeg(lvl, b) >= 0) {
      auto r = pmod(lvl, a, b);
      a = b; b = r;
    }
    int d = pdeg(lvl, a);
    if (d >= 0) {
      FVal li = inv(lvl, a[d]);
      for (auto& c : a) c = mul(lvl, c, li);
    }
    return a;
  }
  // t^e mod f over K_lvl
  std::vector<FVal> p_tpow_mod(int lvl, mpz_class e, const std::vector<FVal>& f) const {
    std::vector<FVal> base{zero(lvl), one(lvl)};
    std::vector<FVal> r{one(lvl)};
    base = pmod(lvl, base, f);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = pmod(lvl, pmul(lvl, r, base), f);
      base = pmod(lvl, pmul(lvl, base, base), f);
      e >>= 1;
    }
    return r;
  }

  // ---- root/irreducibility machinery ----

  // number of elements (finite towers only)
  mpz_class size_finite() const {
    if (p_ == 0) throw std::runtime_error("size_finite: characteristic zero");
    mpz_class s = p_;
    mpz_pow_ui(s.get_mpz_t(), s.get_mpz_t(), degree());
    return s;
  }

  // f irreducible over this (finite) tower, Frobenius gcd test
  bool irreducible_finite(const std::vector<FVal>& f) const {
    int lvl = num_levels();
    int m = pdeg(lvl, f);
    if (m <= 0) return false;
    if (m == 1) return true;
    mpz_class q = size_finite();
    mpz_class qm = 1;
    for (int i = 0; i < m; ++i) qm *= q;
    auto x_qm = p_tpow_mod(lvl, qm, f);
    auto xpoly = std::vector<FVal>{zero(lvl), one(lvl)};
    if (!(pdeg(lvl, psub(lvl, x_qm, pmod(lvl, xpoly, f))) < 0)) return false;
    for (long l = 2; l <= m; ++l) {
      if (m % l) continue;
      bool prime = true;
      for (long t = 2; t * t <= l; ++t) if (l % t == 0) prime = false;
      if (!prime) continue;
      mpz_class qe = 1;
      for (int i = 0; i < m / l; ++i) qe *= q;
      auto g = pgcd(lvl, psub(lvl, p_tpow_mod(lvl, qe, f), pmod(lvl, xpoly, f)), f);
      if (pdeg(lvl, g) != 0) return false;
    }
    return true;
  }

  bool separable(const std::vector<FVal>& f) const {
    int lvl = num_levels();
    std::vector<FVal> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(mul(lvl, from_rat(lvl, (long)i), f[i]));
    auto g = pgcd(lvl, f, df);
    return pdeg(lvl, g) == 0;
  }

  // all coefficients rational?
  std::optional<std::vector<Rat>> rational_coeffs(const std::vector<FVal>& f) const {
    std::vector<Rat> out;
    for (auto& c : f) {
      auto r = as_rational(num_levels(), c);
      if (!r) return std::nullopt;
      out.push_back(*r);
    }
    return out;
  }

  std::optional<Rat> as_rational(int lvl, const FVal& v) const {
    if (lvl == 0) return v.q;
    for (size_t i = 1; i < v.kids.size(); ++i)
      if (!is_zero(lvl - 1, v.kids[i])) return std::nullopt;
    return as_rational(lvl - 1, v.kids[0]);
  }

  // ---- registries (immutable facts + pure lookup) ----

  const std::vector<RootFact>& root_facts() const { return root_facts_; }
  const std::vector<SqrtFact>& sqrt_facts() const { return sqrt_facts_; }

  // square root of a rational inside the tower, if certified present
  std::optional<FVal> find_sqrt_rational(const Rat& c) const {
    if (c == 0) return from_rat(num_levels(), 0);
    if (p_ != 0) return find_sqrt_finite(from_rat(num_levels(), c));
    auto [s, r] = detail::squarefree_decompose(c);
    if (r == 1) return from_rat(num_levels(), s);
    // search subset products of the recorded squarefree witnesses
    size_t n = sqrt_facts_.size();
    for (size_t mask = 1; mask < (1u << n); ++mask) {
      long prod = 1;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) prod *= sqrt_facts_[i].r;
      auto [ps, pr] = detail::squarefree_decompose(Rat(prod));
      if (pr == r) {
        FVal w = from_rat(num_levels(), s / ps);
        for (size_t i = 0; i < n; ++i)
          if (mask & (1u << i))
            w = mul(num_levels(), w, embed(sqrt_facts_[i].level_when, sqrt_facts_[i].val, num_levels()));
        // prod = (ps*pr^(1/2)...)  -- w^2 = (s/ps)^2 * prod = s^2/ps^2 * ps^2 * r = s^2 r = c... verify:
        FVal w2 = mul(num_levels(), w, w);
        if (as_rational(num_levels(), w2) == std::optional<Rat>(c)) return w;
      }
    }
    return std::nullopt;
  }

  // exhaustive square root in a small finite tower
  std::optional<FVal> find_sqrt_finite(const FVal& c) const {
    mpz_class sz = size_finite();
    if (sz > 65536) throw CannotDecide("finite tower too large for exhaustive search");
    std::vector<FVal> all;
    enumerate_all(num_levels(), all);
    for (auto& x : all)
      if (mul(num_levels(), x, x) == c) return x;
    return std::nullopt;
  }

  void enumerate_all(int lvl, std::vector<FVal>& out) const {
    if (lvl == 0) {
      if (p_ == 0) throw std::runtime_error("enumerate_all: infinite field");
      for (long v = 0; v < p_; ++v) out.push_back(FVal{Rat(v), {}});
      return;
    }
    std::vector<FVal> lower;
    enumerate_all(lvl - 1, lower);
    int d = levels_[lvl - 1].degree;
    std::vector<size_t> idx(d, 0);
    while (true) {
      FVal v; v.kids.reserve(d);
      for (int i = 0; i < d; ++i) v.kids.push_back(lower[idx[i]]);
      out.push_back(v);
      int i = 0;
      for (; i < d; ++i) {
        if (++idx[i] < lower.size()) break;
        idx[i] = 0;
      }
      if (i == d) break;
    }
  }

  // primitive n-th root of unity inside the tower, if derivable
  std::optional<FVal> find_root_of_unity(long n) const {
    int L = num_levels();
    if (p_ != 0 && n % p_ == 0) return std::nullopt;
    if (n == 1) return one(L);
    if (n == 2) return from_rat(L, -1);
    for (auto& f : root_facts_)
      if (f.n % n == 0) return pow(L, embed(f.level_when, f.val, L), f.n / n);
    if (p_ != 0) {
      // cyclic group of order q-1: a primitive n-th root exists iff n | q-1
      mpz_class q = size_finite();
      if ((q - 1) % n != 0) return std::nullopt;
      auto phin = cyclotomic_in_tower(n);
      std::vector<FVal> all;
      enumerate_all(L, all);
      for (auto& x : all) {
        FVal v = eval_poly(L, phin, x);
        if (is_zero(L, v)) return x;
      }
      return std::nullopt;
    }
    // char 0: compose prime-power parts
    FVal acc = one(L);
    long m = n;
    for (long pp = 2; pp <= m; ++pp) {
      if (m % pp) continue;
      long pe = 1;
      while (m % pp == 0) { m /= pp; pe *= pp; }
      auto part = root_of_unity_prime_power(pe);
      if (!part) return std::nullopt;
      acc = mul(L, acc, *part);
    }
    return acc;
  }

  std::vector<FVal> cyclotomic_in_tower(long n) const {
    auto z = detail::cyclotomic_z(n);
    std::vector<FVal> f;
    for (auto& c : z) f.push_back(from_rat(num_levels(), Rat(c)));
    return f;
  }

  FVal eval_poly(int lvl, const std::vector<FVal>& f, const FVal& x) const {
    FVal r = zero(lvl);
    for (int i = (int)f.size() - 1; i >= 0; --i) r = add(lvl, mul(lvl, r, x), f[i]);
    return r;
  }

  // ---- string rendering ----

  std::string to_string(int lvl, const FVal& v) const {
    if (lvl == 0) return v.q.get_str();
    bool all_lower = true;
    for (size_t i = 1; i < v.kids.size(); ++i)
      if (!is_zero(lvl - 1, v.kids[i])) all_lower = false;
    if (all_lower) return to_string(lvl - 1, v.kids[0]);
    std::ostringstream os;
    bool first = true;
    const std::string& g = levels_[lvl - 1].name;
    for (int i = (int)v.kids.size() - 1; i >= 0; --i) {
      if (is_zero(lvl - 1, v.kids[i])) continue;
      std::string c = to_string(lvl - 1, v.kids[i]);
      bool needs_paren = c.find_first_of("+-") != std::string::npos && c.rfind('-', 0) != 0;
      if (c.find_first_of("+-", 1) != std::string::npos) needs_paren = true;
      std::string term;
      if (i == 0) term = needs_paren ? "(" + c + ")" : c;
      else {
        std::string xp = (i == 1) ? g : g + "^" + std::to_string(i);
        if (c == "1") term = xp;
        else if (c == "-1") term = "-" + xp;
        else term = (needs_paren ? "(" + c + ")" : c) + "*" + xp;
      }
      if (first) { os << term; first = false; }
      else if (!term.empty() && term[0] == '-') os << " - " << term.substr(1);
      else os << " + " << term;
    }
    if (first) os << "0";
    return os.str();
  }

  // ---- construction ----

  // Extends the tower by a monic polynomial given by its full coefficient list
  // c_0..c_d (c_d must be 1), coefficients being FVals at the current full level.
  // `precertified` skips the irreducibility decision (used for cyclotomics and
  // verified factor constructions).
  TowerPtr adjoin(const std::string& name, std::vector<FVal> coeffs, LevelKind kind = LevelKind::Other,
                  bool precertified = false) const {
    int L = num_levels();
    trim(L, coeffs);
    int d = (int)coeffs.size() - 1;
    if (d < 1 || !(coeffs.back() == one(L))) throw NonMonic("leading coefficient must be 1");
    if (d < 2) throw std::runtime_error("adjoin: degree must be >= 2");
    if (!precertified) certify_irreducible(coeffs);
    if (p_ != 0 && !separable(coeffs)) throw ReduciblePolynomial("inseparable minimal polynomial");
    auto t = std::shared_ptr<FieldTower>(new FieldTower(*this));
    Level lv;
    lv.name = name;
    lv.degree = d;
    lv.kind = kind;
    lv.minpoly.assign(coeffs.begin(), coeffs.begin() + d);
    t->levels_.push_back(lv);
    // registry bookkeeping for quadratic levels t^2 - c with rational c
    if (p_ == 0 && d == 2 && is_zero(L, coeffs[1])) {
      auto c = as_rational(L, coeffs[0]);
      if (c) {
        auto [s, r] = detail::squarefree_decompose(-*c);
        if (r != 1) {
          FVal w = t->div(L + 1, t->gen(L + 1), t->from_rat(L + 1, s));
          t->sqrt_facts_.push_back({r, L + 1, w});
        }
      }
    }
    return t;
  }

  // Throws ReduciblePolynomial / CannotDecide unless certified irreducible.
  void certify_irreducible(const std::vector<FVal>& f) const {
    int L = num_levels();
    int d = pdeg(L, f) ;
    if (p_ != 0) {
      if (!irreducible_finite(f)) throw ReduciblePolynomial("reducible over finite tower");
      return;
    }
    auto rc = rational_coeffs(f);
    if (rc) {
      // rational root test certifies reducibility for any degree;
      // for deg <= 3 its absence certifies irreducibility over Q
      if (has_rational_root(*rc)) throw ReduciblePolynomial("rational root");
      if (d <= 3) {
        if (d == 2) {
          // over a nontrivial tower consult the square-class registry
          Rat disc = rc->at(1) * rc->at(1) - 4 * rc->at(0);
          if (disc == 0) throw ReduciblePolynomial("double rational root");
          if (find_sqrt_rational(disc)) throw ReduciblePolynomial("splits in tower");
          return;
        }
        if (d == 3) {
          if (degree() % 3 != 0) return;  // no degree-3 subextension possible
          throw CannotDecide("cubic over a tower of degree divisible by 3");
        }
        return;
      }
      if (num_levels() == 0 && degree_pattern_irreducible(*rc)) return;
      throw CannotDecide("irreducibility not certified");
    }
    if (d == 2) {
      // disc = c1^2 - 4 c0; decide when it has a rational square class
      FVal disc = sub(L, mul(L, f[1], f[1]), mul(L, from_rat(L, 4), f[0]));
      auto dr = as_rational(L, disc);
      if (dr) {
        if (*dr == 0) throw ReduciblePolynomial("double root");
        if (find_sqrt_rational(*dr)) throw ReduciblePolynomial("splits in tower");
        return;
      }
    }
    throw CannotDecide("irreducibility not certified");
  }

  bool has_rational_root(const std::vector<Rat>& f) const {
    // scale to integer polynomial, test p/q candidates
    mpz_class lcm = 1;
    for (auto& c : f) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), detail::den(c).get_mpz_t());
    std::vector<mpz_class> g;
    for (auto& c : f) g.push_back(detail::num(c) * (lcm / detail::den(c)));
    while (!g.empty() && g.back() == 0) g.pop_back();
    if (g.size() <= 1) return false;
    if (g.front() == 0) return true;  // root 0
    auto divisors = [](mpz_class v) {
      std::vector<mpz_class> ds;
      v = abs(v);
      for (mpz_class i = 1; i * i <= v; ++i)
        if (v % i == 0) { ds.push_back(i); ds.push_back(v / i); }
      return ds;
    };
    if (abs(g.front()) > 1000000000 || abs(g.back()) > 1000000000) {
      // still try small candidates
      for (long n = -60; n <= 60; ++n) {
        if (n == 0) continue;
        Rat x(n);
        Rat v = 0;
        for (int i = (int)g.size() - 1; i >= 0; --i) v = v * x + Rat(g[i]);
        if (v == 0) return true;
      }
      return false;
    }
    for (auto& pn : divisors(g.front()))
      for (auto& qn : divisors(g.back()))
        for (int s = -1; s <= 1; s += 2) {
          Rat x(pn * s, qn);
          x.canonicalize();
          Rat v = 0;
          for (int i = (int)g.size() - 1; i >= 0; --i) v = v * x + Rat(g[i]);
          if (v == 0) return true;
        }
    return false;
  }

  // modular degree-pattern fingerprints: returns true if factor-degree
  // partitions mod several primes force irreducibility over Q
  bool degree_pattern_irreducible(const std::vector<Rat>& f) const {
    int n = (int)f.size() - 1;
    std::set<int> possible;  // possible degrees of a monic factor over Q
    for (int i = 0; i <= n; ++i) possible.insert(i);
    static const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    int used = 0;
    for (long pp : primes) {
      bool bad = false;
      for (auto& c : f)
        if (detail::den(c) % pp == 0) bad = true;
      if (bad) continue;
      auto part = factor_degrees_mod_p(f, pp);
      if (part.empty()) continue;  // not squarefree mod pp
      // subset sums of the partition
      std::set<int> sums{0};
      for (int dd : part) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + dd);
        sums = next;
      }
      std::set<int> inter;
      for (int s : possible)
        if (sums.count(s)) inter.insert(s);
      possible = inter;
      if (++used >= 8) break;
      std::set<int> nontrivial = possible;
      nontrivial.erase(0); nontrivial.erase(n);
      if (nontrivial.empty()) return true;
    }
    std::set<int> nontrivial = possible;
    nontrivial.erase(0); nontrivial.erase(n);
    return nontrivial.empty();
  }

  // distinct-degree factorization degrees of f mod p (empty if not squarefree mod p)
  std::vector<int> factor_degrees_mod_p(const std::vector<Rat>& f, long pp) const {
    auto Fp = FieldTower::prime_field(pp);
    std::vector<FVal> g;
    for (auto& c : f) g.push_back(Fp->from_rat(0, c));
    Fp->trim(0, g);
    if ((int)g.size() - 1 != (int)f.size() - 1) return {};
    // monicize
    FVal li = Fp->inv(0, g.back());
    for (auto& c : g) c = Fp->mul(0, c, li);
    if (!Fp->separable(g)) return {};
    std::vector<int> degs;
    std::vector<FVal> xpoly{Fp->zero(0), Fp->one(0)};
    int dstep = 1;
    while ((int)g.size() - 1 >= 2 * dstep) {
      mpz_class e = 1;
      for (int i = 0; i < dstep; ++i) e *= pp;
      auto h = Fp->psub(0, Fp->p_tpow_mod(0, e, g), Fp->pmod(0, xpoly, g));
      // gcd extracts the product of all irreducible factors of degree dstep... need iterated: use full q^d each step
      // recompute t^(p^dstep) mod g afresh each round for simplicity
      auto gg = Fp->pgcd(0, h, g);
      int dg = Fp->pdeg(0, gg);
      if (dg > 0) {
        for (int i = 0; i < dg / dstep; ++i) degs.push_back(dstep);
        g = Fp->pdivmod(0, g, gg).first;
      }
      ++dstep;
    }
    if ((int)g.size() - 1 > 0) degs.push_back((int)g.size() - 1);
    return degs;
  }

 private:
  explicit FieldTower(long p) : p_(p) {}
  FieldTower(const FieldTower&) = default;

  Rat norm_base(const Rat& q) const {
    if (p_ == 0) return q;
    mpz_class d = detail::den(q), n = detail::num(q), p(p_);
    mpz_class dm = d % p;
    if (dm == 0) throw DivisionByZero("denominator divisible by characteristic");
    mpz_class di;
    mpz_invert(di.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
    mpz_class v = (n % p) * di % p;
    if (v < 0) v += p;
    return Rat(v);
  }
  Rat base_inv(const Rat& q) const {
    if (q == 0) throw DivisionByZero("base inverse of zero");
    if (p_ == 0) return 1 / q;
    mpz_class v = detail::num(q) % p_, p(p_), vi;
    if (v < 0) v += p;
    if (v == 0) throw DivisionByZero("base inverse of zero");
    mpz_invert(vi.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return Rat(vi);
  }

  std::optional<FVal> root_of_unity_prime_power(long pe) const {
    int L = num_levels();
    for (auto& f : root_facts_)
      if (f.n % pe == 0) return pow(L, embed(f.level_when, f.val, L), f.n / pe);
    if (pe == 2) return from_rat(L, -1);
    if (pe == 4) {
      if (auto i = find_sqrt_rational(Rat(-1))) return i;
      return std::nullopt;
    }
    if (pe == 3) {
      if (auto s = find_sqrt_rational(Rat(-3)))
        return div(L, sub(L, *s, one(L)), from_rat(L, 2));  // (-1+sqrt(-3))/2
      return std::nullopt;
    }
    return std::nullopt;
  }

  long p_;
  std::vector<Level> levels_;
  std::vector<RootFact> root_facts_;
  std::vector<SqrtFact> sqrt_facts_;

  friend std::pair<TowerPtr, FieldElement> adjoin_cyclotomic(TowerPtr tower, long n);
};

// Element of the full tower (fully reduced canonical form).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(TowerPtr t, FVal v) : t_(std::move(t)), v_(std::move(v)) {}
  FieldElement(TowerPtr t, const Rat& q) : t_(std::move(t)), v_(t_->from_rat(t_->num_levels(), q)) {}
  FieldElement(TowerPtr t, long n) : FieldElement(std::move(t), Rat(n)) {}

  const TowerPtr& tower() const { return t_; }
  const FVal& val() const { return v_; }

  static FieldElement zero(const TowerPtr& t) { return {t, t->zero(t->num_levels())}; }
  static FieldElement one(const TowerPtr& t) { return {t, t->one(t->num_levels())}; }
  // generator of level i (0-based level index)
  static FieldElement generator(const TowerPtr& t, int i) {
    return {t, t->embed(i + 1, t->gen(i + 1), t->num_levels())};
  }

  bool is_zero() const { return t_->is_zero(t_->num_levels(), v_); }
  bool is_one() const { return *this == one(t_); }
  std::optional<Rat> as_rational() const { return t_->as_rational(t_->num_levels(), v_); }

  FieldElement operator+(const FieldElement& o) const { chk(o); return {t_, t_->add(L(), v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { chk(o); return {t_, t_->sub(L(), v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { chk(o); return {t_, t_->mul(L(), v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { chk(o); return {t_, t_->div(L(), v_, o.v_)}; }
  FieldElement operator-() const { return {t_, t_->neg(L(), v_)}; }
  FieldElement pow(const mpz_class& e) const { return {t_, t_->pow(L(), v_, e)}; }
  FieldElement inv() const { return {t_, t_->inv(L(), v_)}; }
  bool operator==(const FieldElement& o) const {
    if (!t_ || !o.t_) return !t_ && !o.t_;
    chk(o);
    return v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator*(const Rat& q) const { return {t_, t_->mul(L(), v_, t_->from_rat(L(), q))}; }
  FieldElement operator+(const Rat& q) const { return {t_, t_->add(L(), v_, t_->from_rat(L(), q))}; }
  FieldElement operator-(const Rat& q) const { return {t_, t_->sub(L(), v_, t_->from_rat(L(), q))}; }
  FieldElement operator/(const Rat& q) const { return {t_, t_->div(L(), v_, t_->from_rat(L(), q))}; }

  std::string str() const { return t_->to_string(L(), v_); }

  // lift into an extension tower (must have this tower as a prefix)
  FieldElement lift(const TowerPtr& bigger) const {
    if (!t_->prefix_of(*bigger)) throw TowerMismatch("lift: not an extension");
    return {bigger, bigger->embed(t_->num_levels(), v_, bigger->num_levels())};
  }

 private:
  int L() const { return t_->num_levels(); }
  void chk(const FieldElement& o) const {
    if (t_ != o.t_ && !t_->same_description(*o.t_)) throw TowerMismatch("elements from different towers");
  }
  TowerPtr t_;
  FVal v_;
};

inline FieldElement operator*(const Rat& q, const FieldElement& e) { return e * q; }

// adjoin with FieldElement coefficients (public entry point)
inline TowerPtr adjoin_named(TowerPtr tower, const std::string& name, const std::vector<FieldElement>& coeffs,
                             LevelKind kind = LevelKind::Other) {
  std::vector<FVal> c;
  for (auto& e : coeffs) {
    if (e.tower() != tower && !e.tower()->same_description(*tower)) throw TowerMismatch("adjoin coefficients");
    c.push_back(e.val());
  }
  return tower->adjoin(name, std::move(c), kind);
}

// Adjoin a primitive n-th root of unity (or locate one already present).
inline std::pair<TowerPtr, FieldElement> adjoin_cyclotomic(TowerPtr tower, long n) {
  long p = tower->characteristic();
  if (p != 0 && n % p == 0) throw CharacteristicDividesN("n divisible by the characteristic");
  if (auto r = tower->find_root_of_unity(n)) return {tower, FieldElement(tower, *r)};
  int L = tower->num_levels();
  if (p == 0) {
    if (L == 0) {
      auto z = detail::cyclotomic_z(n);
      std::vector<FVal> c;
      for (auto& x : z) c.push_back(tower->from_rat(0, Rat(x)));
      auto t2 = tower->adjoin("z" + std::to_string(n), c, LevelKind::Cyclotomic, /*precertified=*/true);
      auto t2m = std::const_pointer_cast<FieldTower>(t2);
      FVal root = t2->gen(1);
      t2m->root_facts_.push_back({n, 1, root});
      // quadratic subfield witnesses: i, sqrt(2), Gauss sums for odd primes
      int TL = 1;
      if (n % 4 == 0) t2m->sqrt_facts_.push_back({-1, TL, t2->pow(TL, root, n / 4)});
      if (n % 8 == 0) {
        FVal z8 = t2->pow(TL, root, n / 8);
        t2m->sqrt_facts_.push_back({2, TL, t2->add(TL, z8, t2->inv(TL, z8))});
      }
      long m = n;
      for (long q = 3; q <= m; q += 2) {
        if (m % q) continue;
        bool prime = true;
        for (long d = 2; d * d <= q; ++d) if (q % d == 0) prime = false;
        if (prime) {
          FVal zq = t2->pow(TL, root, n / q);
          FVal g = t2->zero(TL);
          for (long k = 1; k < q; ++k) {
            long ls = detail::mod_pow(k, (q - 1) / 2, q) == 1 ? 1 : -1;
            FVal term = t2->pow(TL, zq, k);
            g = ls == 1 ? t2->add(TL, g, term) : t2->sub(TL, g, term);
          }
          long qstar = (q % 4 == 1) ? q : -q;
          t2m->sqrt_facts_.push_back({qstar, TL, g});
        }
        while (m % q == 0) m /= q;
      }
      return {t2, FieldElement(t2, t2->embed(1, root, t2->num_levels()))};
    }
    // nontrivial tower: only quadratic cyclotomics can be adjoined here
    if (detail::euler_phi(n) == 2) {
      long nn = (n == 6) ? 3 : n;  // zeta_6 = -zeta_3^2
      std::vector<FVal> c;
      if (nn == 3) c = {tower->one(L), tower->one(L), tower->one(L)};           // t^2+t+1
      else if (nn == 4) c = {tower->one(L), tower->zero(L), tower->one(L)};     // t^2+1
      else throw MissingRootOfUnity("unsupported quadratic cyclotomic");
      auto t2 = tower->adjoin("z" + std::to_string(nn), c, LevelKind::Cyclotomic);
      auto t2m = std::const_pointer_cast<FieldTower>(t2);
      int TL = t2->num_levels();
      FVal root = t2->gen(TL);
      t2m->root_facts_.push_back({nn, TL, root});
      if (nn == 3) {
        FVal s = t2->add(TL, t2->mul(TL, t2->from_rat(TL, 2), root), t2->one(TL));  // 2*z3+1 = sqrt(-3)
        t2m->sqrt_facts_.push_back({-3, TL, s});
      } else {
        t2m->sqrt_facts_.push_back({-1, TL, root});
      }
      FieldElement r(t2, root);
      if (n == 6) r = -(r * r);
      return {t2, r};
    }
    throw MissingRootOfUnity("cannot extend a composite tower by this root of unity");
  }
  // finite: adjoin a degree-r irreducible factor of Phi_n over the current tower
  mpz_class q = tower->size_finite();
  long qm = (long)mpz_fdiv_ui(q.get_mpz_t(), n);
  long r = detail::mul_order_mod(qm, n);
  auto phin = tower->cyclotomic_in_tower(n);
  // deterministic search over monic degree-r polynomials for a factor
  if (q > 4096) throw CannotDecide("finite base too large for factor search");
  std::vector<FVal> all;
  tower->enumerate_all(L, all);
  std::vector<size_t> idx(r, 0);
  while (true) {
    std::vector<FVal> cand;
    for (long i = 0; i < r; ++i) cand.push_back(all[idx[i]]);
    cand.push_back(tower->one(L));
    auto rem = tower->pmod(L, phin, cand);
    if (tower->pdeg(L, rem) < 0) {
      auto t2 = tower->adjoin("z" + std::to_string(n), cand, LevelKind::Cyclotomic, /*precertified=*/true);
      auto t2m = std::const_pointer_cast<FieldTower>(t2);
      int TL = t2->num_levels();
      t2m->root_facts_.push_back({n, TL, t2->gen(TL)});
      return {t2, FieldElement(t2, t2->gen(TL))};
    }
    long i = 0;
    for (; i < r; ++i) {
      if (++idx[i] < all.size()) break;
      idx[i] = 0;
    }
    if (i == r) break;
  }
  throw MissingRootOfUnity("no cyclotomic factor found");
}

// convenience: quadratic extension by sqrt(c), c rational (or already a square -> unchanged)
inline std::pair<TowerPtr, FieldElement> adjoin_sqrt(TowerPtr tower, const Rat& c, const std::string& name) {
  if (auto w = tower->find_sqrt_rational(c)) return {tower, FieldElement(tower, *w)};
  int L = tower->num_levels();
  std::vector<FVal> mp{tower->from_rat(L, -c), tower->zero(L), tower->one(L)};
  auto t2 = tower->adjoin(name, mp, LevelKind::QuadraticRational);
  return {t2, FieldElement(t2, t2->gen(t2->num_levels()))};
}

// ---- automorphisms ----

class Automorphism {
 public:
  Automorphism() = default;
  // images: one FieldElement (of the full tower) per level
  Automorphism(TowerPtr t, std::vector<FieldElement> images) : t_(std::move(t)) {
    for (auto& e : images) img_.push_back(e.val());
    validate();
  }
  static Automorphism identity(const TowerPtr& t) {
    std::vector<FieldElement> im;
    for (int i = 0; i < t->num_levels(); ++i) im.push_back(FieldElement::generator(t, i));
    return Automorphism(t, im);
  }

  const TowerPtr& tower() const { return t_; }
  FieldElement image(int level_idx) const { return {t_, img_[level_idx]}; }

  FieldElement operator()(const FieldElement& x) const {
    if (x.tower() != t_ && !x.tower()->same_description(*t_)) throw TowerMismatch("automorphism apply");
    return {t_, apply_at(t_->num_levels(), x.val())};
  }

  // composition: (f*g)(x) = f(g(x))
  Automorphism compose(const Automorphism& g) const {
    Automorphism r;
    r.t_ = t_;
    for (size_t i = 0; i < img_.size(); ++i) r.img_.push_back(apply_at(t_->num_levels(), g.img_[i]));
    return r;
  }

  bool operator==(const Automorphism& o) const { return img_ == o.img_; }
  bool is_identity() const { return *this == identity(t_); }

  int order(int cap = 1000) const {
    Automorphism a = *this;
    for (int k = 1; k <= cap; ++k) {
      if (a.is_identity()) return k;
      a = compose_raw(a, *this);
    }
    throw std::runtime_error("automorphism order exceeds cap");
  }

  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < img_.size(); ++i) {
      if (i) os << ", ";
      os << t_->level(i).name << " -> " << t_->to_string(t_->num_levels(), img_[i]);
    }
    return os.str();
  }

  // apply to an FVal at a given level, result at full level
  FVal apply_at(int lvl, const FVal& v) const {
    int L = t_->num_levels();
    if (lvl == 0) return t_->from_rat(L, v.q);
    FVal r = t_->zero(L);
    const FVal& g = img_[lvl - 1];
    for (int i = (int)v.kids.size() - 1; i >= 0; --i)
      r = t_->add(L, t_->mul(L, r, g), apply_at(lvl - 1, v.kids[i]));
    return r;
  }

 private:
  static Automorphism compose_raw(const Automorphism& f, const Automorphism& g) {
    Automorphism r;
    r.t_ = f.t_;
    for (size_t i = 0; i < f.img_.size(); ++i) r.img_.push_back(f.apply_at(f.t_->num_levels(), g.img_[i]));
    return r;
  }
  void validate() const {
    int L = t_->num_levels();
    if ((int)img_.size() != L) throw NotAnAutomorphism("one image per level required");
    for (int lvl = 1; lvl <= L; ++lvl) {
      const auto& mp = t_->level(lvl - 1).minpoly;
      // evaluate (phi applied to coefficients of minpoly) at img_[lvl-1]
      FVal x = img_[lvl - 1];
      FVal r = x;
      for (int i = 1; i < t_->level(lvl - 1).degree; ++i) r = t_->mul(L, r, x);
      for (int j = (int)mp.size() - 1; j >= 0; --j)
        r = t_->add(L, r, t_->mul(L, apply_at(lvl - 1, mp[j]), t_->pow(L, x, j)));
      if (!t_->is_zero(L, r)) throw NotAnAutomorphism("image is not a root of the (mapped) minimal polynomial");
    }
  }
  friend class GaloisGroup;
  TowerPtr t_;
  std::vector<FVal> img_;
};

class GaloisGroup {
 public:
  GaloisGroup() = default;
  const std::vector<Automorphism>& elements() const { return elems_; }
  int size() const { return (int)elems_.size(); }
  int identity_index() const { return id_; }
  int mul(int i, int j) const { return mul_[i][j]; }
  int inverse(int i) const { return inv_[i]; }
  const Automorphism& operator[](int i) const { return elems_[i]; }

  static GaloisGroup closure(const TowerPtr& t, const std::vector<Automorphism>& gens) {
    GaloisGroup g;
    g.elems_.push_back(Automorphism::identity(t));
    size_t frontier = 0;
    long cap = t->degree();
    while (frontier < g.elems_.size()) {
      Automorphism cur = g.elems_[frontier++];
      for (auto& s : gens) {
        Automorphism n = s.compose(cur);
        bool found = false;
        for (auto& e : g.elems_)
          if (e == n) { found = true; break; }
        if (!found) {
          g.elems_.push_back(n);
          if ((long)g.elems_.size() > cap) throw ClosureTooLarge("closure exceeds tower degree");
        }
      }
    }
    int n = (int)g.elems_.size();
    g.mul_.assign(n, std::vector<int>(n, -1));
    g.inv_.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Automorphism c = g.elems_[i].compose(g.elems_[j]);
        for (int k = 0; k < n; ++k)
          if (g.elems_[k] == c) { g.mul_[i][j] = k; break; }
        if (g.mul_[i][j] < 0) throw ClosureTooLarge("not closed under composition");
        if (g.mul_[i][j] == 0) g.inv_[i] = j;
      }
    g.id_ = 0;
    return g;
  }

 private:
  std::vector<Automorphism> elems_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int id_ = 0;
};

// Spec op: build and close a Galois group from generator images.
// generator_images[i] lists the image of each level generator.
inline GaloisGroup automorphism_group(const TowerPtr& t,
                                      const std::vector<std::vector<FieldElement>>& generator_images) {
  std::vector<Automorphism> gens;
  for (auto& gi : generator_images) gens.emplace_back(t, gi);
  return GaloisGroup::closure(t, gens);
}

}  // namespace rdp
