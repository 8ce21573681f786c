#include <catch2/catch_amalgamated.hpp>

#include <rdp/invariantring.hpp>

using namespace rdp;

static BivariatePoly mono(const TowerPtr& t, int i, int j, Rat c = 1) {
  return BivariatePoly::monomial(t, i, j, c);
}

TEST_CASE("fundamental invariants are group-fixed") {
  auto Q = FieldTower::rationals();
  // mu_n by weights
  for (long n : {3L, 5L}) {
    auto g = fundamental_invariants(GroupKind::Mu, n, Q);
    MuGroup mu(n);
    for (auto& f : {g.A, g.B, g.C})
      for (auto& [e, c] : f.terms()) REQUIRE(mu.monomial_invariant(e[0], e[1]));
  }
  // BD_n^* by the full element list
  for (long n : {2L, 3L}) {
    auto [T, z] = adjoin_cyclotomic(Q, std::max(4L, 2 * n));
    auto m = build_bd_star(n, T);
    auto g0 = fundamental_invariants(GroupKind::BDStar, n, Q);
    auto g = g0.lift(T);
    for (auto& f : {g.A, g.B, g.C})
      for (auto& el : m.elements()) REQUIRE(act(el, f) == f);
  }
  // BT* and BO
  {
    auto [T, z8] = adjoin_cyclotomic(Q, 8);
    auto bt = build_bt_star(T);
    auto g = fundamental_invariants(GroupKind::BTStar, 0, Q).lift(T);
    for (auto& f : {g.A, g.B, g.C})
      for (auto& el : bt.elements()) REQUIRE(act(el, f) == f);
    auto bo = build_bo(T);
    auto h = fundamental_invariants(GroupKind::BO, 0, Q).lift(T);
    for (auto& f : {h.A, h.B, h.C})
      for (auto& el : bo.elements()) REQUIRE(act(el, f) == f);
  }
}

TEST_CASE("BD2 invariants match the explicit forms") {
  auto Q = FieldTower::rationals();
  auto g = fundamental_invariants(GroupKind::BDStar, 2, Q);
  REQUIRE(g.A == mono(Q, 4, 0) + mono(Q, 0, 4));
  REQUIRE(g.B == mono(Q, 2, 2));
  REQUIRE(g.C == mono(Q, 5, 1) - mono(Q, 1, 5));
}

TEST_CASE("BO invariants: explicit D and E expansions") {
  auto Q = FieldTower::rationals();
  auto g = fundamental_invariants(GroupKind::BO, 0, Q);
  // E = x^8 + 14 x^4 y^4 + y^8
  REQUIRE(g.C == mono(Q, 8, 0) + mono(Q, 4, 4, 14) + mono(Q, 0, 8));
  // T = w * D with D = x^12 + y^12 - 33 x^4 y^4 (x^4 + y^4)
  auto w = mono(Q, 5, 1) - mono(Q, 1, 5);
  auto D = mono(Q, 12, 0) + mono(Q, 0, 12) - mono(Q, 8, 4, 33) - mono(Q, 4, 8, 33);
  REQUIRE(g.B == w * D);
  REQUIRE(g.A == w * w);
}

TEST_CASE("split relations verify: BT* and BO") {
  auto Q = FieldTower::rationals();
  auto bt = fundamental_invariants(GroupKind::BTStar, 0, Q);
  // (A/2)^2 + 108 C^4 - B^3 = 0
  TrivariatePoly F(Q);
  F.add_term(2, 0, 0, FieldElement(Q, Rat(1, 4)));
  F.add_term(0, 0, 4, FieldElement(Q, 108));
  F.add_term(0, 3, 0, FieldElement(Q, -1));
  REQUIRE(verify_identity(F, bt).verified);
  auto bo = fundamental_invariants(GroupKind::BO, 0, Q);
  // (R, T, E): T^2 + 108 R^3 - R E^3 = 0
  TrivariatePoly G(Q);
  G.add_term(0, 2, 0, FieldElement::one(Q));
  G.add_term(3, 0, 0, FieldElement(Q, 108));
  G.add_term(1, 0, 3, FieldElement(Q, -1));
  REQUIRE(verify_identity(G, bo).verified);
  // perturbed relation fails with residual 1: XY - Z^n + 1 on (x^n, y^n, xy)
  auto mu = fundamental_invariants(GroupKind::Mu, 4, Q);
  TrivariatePoly Hq(Q);
  Hq.add_term(1, 1, 0, FieldElement::one(Q));
  Hq.add_term(0, 0, 4, FieldElement(Q, -1));
  Hq.add_term(0, 0, 0, FieldElement::one(Q));
  auto chk = verify_identity(Hq, mu);
  REQUIRE(!chk.verified);
  REQUIRE(chk.residual == mono(Q, 0, 0));
}

TEST_CASE("derived BI invariants and the degree-60 relation") {
  auto Q = FieldTower::rationals();
  auto [T, z5] = adjoin_cyclotomic(Q, 5);
  auto bi = build_bi(T);
  // degree-12 invariant space is one-dimensional
  REQUIRE(invariant_space_over(bi.elements(), T, 12).size() == 1);
  auto g = fundamental_invariants(GroupKind::BI, 0, T, &bi);
  // f = xy(x^10 - 11 x^5 y^5 - y^10), monic in grlex
  REQUIRE(g.A == mono(T, 11, 1) - mono(T, 6, 6, 11) - mono(T, 1, 11));
  // H and T are invariants of degrees 20 and 30
  REQUIRE(g.B.degree() == 20);
  REQUIRE(g.C.degree() == 30);
  for (auto& el : bi.elements()) {
    REQUIRE(act(el, g.B) == g.B);
    REQUIRE(act(el, g.C) == g.C);
  }
  REQUIRE(g.A.terms().size() == 3);
  // the relation among (f, H, T): unique at weighted degree 60 with
  // monomial support {X^5, Y^3, Z^2}
  auto rel = syzygy_search(g, 60);
  REQUIRE(rel.weighted_degree == 60);
  REQUIRE(rel.F.terms().size() == 3);
  // matches T^2 + H^3 + 1728 f^5 = 0 exactly
  TrivariatePoly K(T);
  K.add_term(0, 0, 2, FieldElement::one(T));
  K.add_term(0, 3, 0, FieldElement::one(T));
  K.add_term(5, 0, 0, FieldElement(T, 1728));
  REQUIRE(verify_identity(K, g).verified);
}

TEST_CASE("syzygy search: A-type and D-type relations") {
  auto Q = FieldTower::rationals();
  {
    auto g = fundamental_invariants(GroupKind::Mu, 4, Q);
    auto rel = syzygy_search(g, 12);
    REQUIRE(rel.weighted_degree == 8);
    REQUIRE(rel.F.coeff(0, 0, 4) == FieldElement::one(Q));
    REQUIRE(rel.F.coeff(1, 1, 0) == FieldElement(Q, -1));
    REQUIRE(rel.F.terms().size() == 2);
  }
  {
    // (u, v, w) for n = 3: w^2 = (u^2 - 4 v^3) v, slots (X, Y, Z)
    auto g = fundamental_invariants(GroupKind::BDStar, 3, Q);
    auto rel = syzygy_search(g, 20);
    REQUIRE(rel.weighted_degree == 16);
    TrivariatePoly expect(Q);
    expect.add_term(0, 0, 2, FieldElement::one(Q));   // Z^2 = w^2
    expect.add_term(2, 1, 0, FieldElement(Q, -1));    // -u^2 v
    expect.add_term(0, 4, 0, FieldElement(Q, 4));     // +4 v^4
    auto chk = verify_identity(rel.F, g);
    REQUIRE(chk.verified);
    REQUIRE(verify_identity(expect, g).verified);
  }
}

TEST_CASE("syzygy search error paths") {
  auto Q = FieldTower::rationals();
  InvariantTriple degen{mono(Q, 1, 1), mono(Q, 1, 1), mono(Q, 1, 1)};
  REQUIRE_THROWS_AS(syzygy_search(degen, 8), RelationNotUnique);
  InvariantTriple indep{mono(Q, 1, 0), mono(Q, 0, 1), mono(Q, 1, 1, 2)};
  REQUIRE_THROWS_AS(syzygy_search(indep, 1), NoRelationFound);
}

TEST_CASE("quadratic descent: C/D data gives (v, sqrt(d) u, sqrt(d) w)") {
  auto Q = FieldTower::rationals();
  auto [T, sd] = adjoin_sqrt(Q, 2, "sqrt2");
  long n = 3;
  auto g0 = fundamental_invariants(GroupKind::BDStar, n, Q);
  InvariantTriple g = g0.lift(T);
  TwistAction tw;
  tw.gal = automorphism_group(T, {{-sd}});
  for (int k = 0; k < tw.gal.size(); ++k)
    tw.mats.push_back(tw.gal[k].is_identity() ? TwistAction::identity_mat(T)
                                              : TwistAction::diag_mat(T, -1, 1, -1));
  auto d = descend_quadratic(g, tw, sd);
  // +1 block first: v; then sqrt(d) u, sqrt(d) w
  REQUIRE(d.A == g.B);
  REQUIRE(d.B == g.A * sd);
  REQUIRE(d.C == g.C * sd);
  // the descended relation has base-field coefficients
  auto rel = syzygy_search(d, 4 * (int)n + 4);
  for (auto& [e, c] : rel.F.terms()) REQUIRE(c.as_rational().has_value());
}

TEST_CASE("descend rejects non-fixed combinations") {
  auto Q = FieldTower::rationals();
  auto [T, sd] = adjoin_sqrt(Q, 3, "sqrt3");
  auto g0 = fundamental_invariants(GroupKind::BDStar, 2, Q);
  InvariantTriple g = g0.lift(T);
  TwistAction tw;
  tw.gal = automorphism_group(T, {{-sd}});
  for (int k = 0; k < tw.gal.size(); ++k)
    tw.mats.push_back(tw.gal[k].is_identity() ? TwistAction::identity_mat(T)
                                              : TwistAction::diag_mat(T, -1, 1, -1));
  std::array<std::array<FieldElement, 3>, 3> rows = {{
      {FieldElement::one(T), FieldElement::zero(T), FieldElement::zero(T)},
      {FieldElement::zero(T), FieldElement::one(T), FieldElement::zero(T)},
      {FieldElement::zero(T), FieldElement::zero(T), sd},
  }};
  REQUIRE_THROWS_AS(descend_combination(g, tw, rows), NotRational);
}

TEST_CASE("trivial descent returns the triple unchanged") {
  auto Q = FieldTower::rationals();
  auto g = fundamental_invariants(GroupKind::BDStar, 2, Q);
  TwistAction tw;
  tw.gal = automorphism_group(Q, {});
  tw.mats.push_back(TwistAction::identity_mat(Q));
  auto rows = TwistAction::identity_mat(Q);
  auto d = descend_combination(g, tw, rows);
  REQUIRE(d.A == g.A);
  REQUIRE(d.B == g.B);
  REQUIRE(d.C == g.C);
}

TEST_CASE("Hilbert series cross-check for BD3* up to degree 12") {
  auto Q = FieldTower::rationals();
  auto [T, z12] = adjoin_cyclotomic(Q, 12);
  auto m = build_bd_star(3, T);
  auto mol = molien_series_over(m.elements(), T, 12);
  for (int d = 0; d <= 12; ++d)
    REQUIRE(Rat((long)invariant_space_over(m.elements(), T, d).size()) == mol[d]);
}
