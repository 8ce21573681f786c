// Fundamental invariants for each group, Galois-descent combinations,
// syzygy discovery by exact linear algebra, and identity verification.
#pragma once

#include "mckay.hpp"

namespace rdp {

struct MissingConstant : std::runtime_error {
  explicit MissingConstant(const std::string& m) : std::runtime_error("MissingConstant: " + m) {}
};
struct WrongCharacteristic : std::runtime_error {
  explicit WrongCharacteristic(const std::string& m) : std::runtime_error("WrongCharacteristic: " + m) {}
};
struct ActionNotClosed : std::runtime_error {
  explicit ActionNotClosed(const std::string& m) : std::runtime_error("ActionNotClosed: " + m) {}
};
struct NotRational : std::runtime_error {
  explicit NotRational(const std::string& m) : std::runtime_error("NotRational: " + m) {}
};
struct NoRelationFound : std::runtime_error {
  explicit NoRelationFound(const std::string& m) : std::runtime_error("NoRelationFound: " + m) {}
};
struct RelationNotUnique : std::runtime_error {
  explicit RelationNotUnique(const std::string& m) : std::runtime_error("RelationNotUnique: " + m) {}
};

struct InvariantTriple {
  BivariatePoly A, B, C;
  const BivariatePoly& gen(int i) const { return i == 0 ? A : i == 1 ? B : C; }
  std::array<int, 3> degrees() const { return {A.degree(), B.degree(), C.degree()}; }
  TowerPtr tower() const { return A.tower(); }
  InvariantTriple lift(const TowerPtr& t) const { return {A.lift(t), B.lift(t), C.lift(t)}; }
};

// Semilinear twist action on the span of the three generators: element k of
// the Galois group acts by the field automorphism on coefficients composed
// with g_i |-> sum_j mats[k][i][j] g_j.
struct TwistAction {
  GaloisGroup gal;
  std::vector<std::array<std::array<FieldElement, 3>, 3>> mats;

  static std::array<std::array<FieldElement, 3>, 3> identity_mat(const TowerPtr& t) {
    auto z = FieldElement::zero(t), o = FieldElement::one(t);
    return {{{o, z, z}, {z, o, z}, {z, z, o}}};
  }
  static std::array<std::array<FieldElement, 3>, 3> diag_mat(const TowerPtr& t, int s0, int s1, int s2) {
    auto m = identity_mat(t);
    m[0][0] = FieldElement(t, s0);
    m[1][1] = FieldElement(t, s1);
    m[2][2] = FieldElement(t, s2);
    return m;
  }
};

// image of a combination sum_i n_i g_i under gal element k
inline BivariatePoly twist_apply(const InvariantTriple& g, const TwistAction& tw, int k,
                                 const std::array<FieldElement, 3>& n) {
  auto t = g.tower();
  const auto& phi = tw.gal[k];
  BivariatePoly out(t);
  for (int i = 0; i < 3; ++i) {
    if (n[i].is_zero()) continue;
    FieldElement ci = phi(n[i]);
    for (int j = 0; j < 3; ++j)
      if (!tw.mats[k][i][j].is_zero()) out = out + g.gen(j) * (ci * tw.mats[k][i][j]);
  }
  return out;
}

// consistency of the action data: gamma(delta(g_i)) == (gamma*delta)(g_i)
// as polynomials, and each action preserves the generator span bijectively
inline void validate_twist(const InvariantTriple& g, const TwistAction& tw) {
  auto t = g.tower();
  if ((int)tw.mats.size() != tw.gal.size()) throw ActionNotClosed("one matrix per Galois element required");
  auto unit = [&](int i) {
    std::array<FieldElement, 3> n{FieldElement::zero(t), FieldElement::zero(t), FieldElement::zero(t)};
    n[i] = FieldElement::one(t);
    return n;
  };
  for (int a = 0; a < tw.gal.size(); ++a)
    for (int b = 0; b < tw.gal.size(); ++b) {
      int ab = tw.gal.mul(a, b);
      for (int i = 0; i < 3; ++i) {
        // gamma_a applied to (gamma_b(g_i) expressed in the generators)
        std::array<FieldElement, 3> row;
        for (int j = 0; j < 3; ++j) row[j] = tw.mats[b][i][j];
        BivariatePoly lhs = twist_apply(g, tw, a, row);
        BivariatePoly rhs = twist_apply(g, tw, ab, unit(i));
        if (lhs != rhs) throw ActionNotClosed("twist action is not compatible with composition");
      }
    }
}

// is the combination sum n_i g_i fixed by the whole semilinear action?
inline bool twist_fixed(const InvariantTriple& g, const TwistAction& tw, const std::array<FieldElement, 3>& n) {
  BivariatePoly ref(g.tower());
  for (int i = 0; i < 3; ++i) ref = ref + g.gen(i) * n[i];
  for (int k = 0; k < tw.gal.size(); ++k)
    if (twist_apply(g, tw, k, n) != ref) return false;
  return true;
}

// explicit descent: rows give the three output generators as combinations of
// the input ones; every output must be fixed by the semilinear action
inline InvariantTriple descend_combination(const InvariantTriple& g, const TwistAction& tw,
                                           const std::array<std::array<FieldElement, 3>, 3>& rows) {
  validate_twist(g, tw);
  auto t = g.tower();
  std::array<BivariatePoly, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (!twist_fixed(g, tw, rows[i])) throw NotRational("descended generator is not Galois fixed");
    BivariatePoly p(t);
    for (int j = 0; j < 3; ++j) p = p + g.gen(j) * rows[i][j];
    out[i] = p;
  }
  return {out[0], out[1], out[2]};
}

// generic order-2 descent: split the generator span into +1/-1 eigenvectors
// of the nontrivial action matrix and scale the -1 part by sqrt_d;
// outputs ordered +1 block first (reduced echelon), then the -1 block.
inline InvariantTriple descend_quadratic(const InvariantTriple& g, const TwistAction& tw,
                                         const FieldElement& sqrt_d) {
  validate_twist(g, tw);
  auto t = g.tower();
  if (tw.gal.size() != 2) throw ActionNotClosed("descend_quadratic expects a Galois group of order 2");
  int s = tw.gal.identity_index() == 0 ? 1 : 0;
  // rational combinations c with M^T c = +-c
  auto eig = [&](int sign) {
    std::vector<std::vector<FieldElement>> m(3, std::vector<FieldElement>(3, FieldElement::zero(t)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m[i][j] = tw.mats[s][j][i];  // transpose
        if (i == j) m[i][j] = m[i][j] - FieldElement(t, sign);
      }
    return kernel(m, t);
  };
  auto plus = eig(1), minus = eig(-1);
  if (plus.size() + minus.size() != 3) throw ActionNotClosed("action on the span is not an involution");
  std::array<std::array<FieldElement, 3>, 3> rows;
  int r = 0;
  for (auto& v : plus) rows[r++] = {v[0], v[1], v[2]};
  for (auto& v : minus) rows[r++] = {v[0] * sqrt_d, v[1] * sqrt_d, v[2] * sqrt_d};
  return descend_combination(g, tw, rows);
}

enum class GroupKind { Mu, BDStar, BTStar, BO, BI };

namespace detail_inv {
inline BivariatePoly xp(const TowerPtr& t, int i, int j, const Rat& c = 1) {
  return BivariatePoly::monomial(t, i, j, c);
}
// u = x^{2n} + y^{2n}, v = (xy)^2, w = xy(x^{2n} - y^{2n})
inline std::array<BivariatePoly, 3> uvw(const TowerPtr& t, long n) {
  auto u = xp(t, 2 * n, 0) + xp(t, 0, 2 * n);
  auto v = xp(t, 2, 2);
  auto w = xp(t, 2 * n + 1, 1) - xp(t, 1, 2 * n + 1);
  return {u, v, w};
}
}  // namespace detail_inv

// the fundamental invariants of mu_n, BD_n^*, BT^*, BO, and (derived) BI
inline InvariantTriple fundamental_invariants(GroupKind k, long n, const TowerPtr& t,
                                              const EtaleGroupModel* model = nullptr) {
  using detail_inv::xp;
  long p = t->characteristic();
  switch (k) {
    case GroupKind::Mu:
      return {xp(t, n, 0), xp(t, 0, n), xp(t, 1, 1)};
    case GroupKind::BDStar: {
      if (p == 2) throw WrongCharacteristic("BD requires char != 2");
      auto [u, v, w] = detail_inv::uvw(t, n);
      return {u, v, w};
    }
    case GroupKind::BTStar: {
      if (p == 2 || p == 3) throw WrongCharacteristic("BT* requires char != 2,3");
      auto [u, v, w] = detail_inv::uvw(t, 2);
      auto A = (u * (u * u - v * v * Rat(36))) * Rat(2);
      auto B = u * u + v * v * Rat(12);
      return {A, B, w};
    }
    case GroupKind::BO: {
      if (p == 2 || p == 3) throw WrongCharacteristic("BO requires char != 2,3");
      auto [u, v, w] = detail_inv::uvw(t, 2);
      auto D = u * (u * u - v * v * Rat(36));  // x^12 + y^12 - 33 x^4 y^4 (x^4+y^4)
      auto E = u * u + v * v * Rat(12);        // x^8 + 14 x^4 y^4 + y^8
      return {w * w, w * D, E};                // (R, T, E)
    }
    case GroupKind::BI: {
      if (p == 2 || p == 3 || p == 5) throw WrongCharacteristic("BI requires char != 2,3,5");
      if (p == 11) throw WrongCharacteristic("Hessian normalization needs 121 invertible");
      if (!model) throw MissingConstant("BI invariants are derived from the model");
      auto basis = invariant_space_over(model->elements(), t, 12);
      if (basis.size() != 1) throw std::runtime_error("degree-12 invariant space is not one-dimensional");
      BivariatePoly f = basis[0];
      FieldElement lead = f.terms().begin()->second;
      f = f * lead.inv();
      auto fxx = f.dx().dx(), fxy = f.dx().dy(), fyy = f.dy().dy();
      BivariatePoly H = (fxx * fyy - fxy * fxy) * Rat(1, 121);
      BivariatePoly T = (f.dx() * H.dy() - f.dy() * H.dx()) * Rat(1, 20);
      return {f, H, T};
    }
  }
  throw std::runtime_error("unreachable");
}

struct SyzygyRelation {
  TrivariatePoly F;
  int weighted_degree = 0;
};

// Enumerate weighted monomials X^aY^bZ^c, evaluate by substitution, take the
// kernel; the minimal weighted degree with a nonzero kernel must carry a
// one-dimensional kernel.  Normalized monic in graded lex on (X,Y,Z).
inline SyzygyRelation syzygy_search(const InvariantTriple& g, int weighted_degree_bound) {
  auto t = g.tower();
  auto w = g.degrees();
  if (w[0] <= 0 || w[1] <= 0 || w[2] <= 0) throw std::runtime_error("syzygy weights must be positive");
  // power caches
  std::vector<BivariatePoly> pa{BivariatePoly::monomial(t, 0, 0)}, pb = pa, pc = pa;
  auto powof = [&](std::vector<BivariatePoly>& cache, const BivariatePoly& base, int e) -> const BivariatePoly& {
    while ((int)cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  for (int wd = 1; wd <= weighted_degree_bound; ++wd) {
    std::vector<std::array<int, 3>> monos;
    for (int a = 0; a * w[0] <= wd; ++a)
      for (int b = 0; a * w[0] + b * w[1] <= wd; ++b) {
        int rest = wd - a * w[0] - b * w[1];
        if (rest % w[2]) continue;
        monos.push_back({a, b, rest / w[2]});
      }
    if (monos.size() < 2) continue;
    std::vector<BivariatePoly> evals;
    for (auto& m : monos)
      evals.push_back(powof(pa, g.A, m[0]) * powof(pb, g.B, m[1]) * powof(pc, g.C, m[2]));
    // coefficient matrix over the union of xy-monomials
    std::set<std::array<int, 2>> support;
    for (auto& e : evals)
      for (auto& [ex, c] : e.terms()) support.insert(ex);
    std::vector<std::vector<FieldElement>> mat;
    for (auto& ex : support) {
      std::vector<FieldElement> row;
      for (auto& e : evals) row.push_back(e.coeff(ex[0], ex[1]));
      mat.push_back(std::move(row));
    }
    auto ker = kernel(mat, t);
    if (ker.empty()) continue;
    if (ker.size() > 1) throw RelationNotUnique("kernel dimension " + std::to_string(ker.size()) +
                                                " at weighted degree " + std::to_string(wd));
    TrivariatePoly F(t, w);
    for (size_t i = 0; i < monos.size(); ++i)
      if (!ker[0][i].is_zero()) F.add_term(monos[i][0], monos[i][1], monos[i][2], ker[0][i]);
    FieldElement lead = F.terms().begin()->second;  // graded-lex largest term
    F = F * lead.inv();
    F.set_weights(w);
    return {F, wd};
  }
  throw NoRelationFound("no relation up to weighted degree " + std::to_string(weighted_degree_bound));
}

struct IdentityCheck {
  bool verified;
  BivariatePoly residual;
};

inline IdentityCheck verify_identity(const TrivariatePoly& F, const InvariantTriple& g) {
  BivariatePoly r = substitute(F, g.A, g.B, g.C);
  return {r.is_zero(), r};
}

}  // namespace rdp
