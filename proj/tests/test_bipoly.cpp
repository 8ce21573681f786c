#include <catch2/catch_amalgamated.hpp>

#include <rdp/bipoly.hpp>
#include <rdp/groupmodels.hpp>

using namespace rdp;

static BivariatePoly mono(const TowerPtr& t, int i, int j, Rat c = 1) {
  return BivariatePoly::monomial(t, i, j, c);
}

TEST_CASE("act: weights cancel and identity") {
  auto Q = FieldTower::rationals();
  auto [T, z3] = adjoin_cyclotomic(Q, 3);
  Mat2 g = Mat2::diag(z3, z3.inv());
  auto f = mono(T, 2, 2);
  REQUIRE(act(g, f) == f);
  REQUIRE(act(Mat2::identity(T), f) == f);
}

TEST_CASE("act: antidiagonal BD2 point sends xy to -xy") {
  auto Q = FieldTower::rationals();
  Mat2 g = Mat2::anti_diag(FieldElement::one(Q), -FieldElement::one(Q));  // [[0,1],[-1,0]]
  auto f = mono(Q, 1, 1);
  REQUIRE(act(g, f) == mono(Q, 1, 1, -1));
}

TEST_CASE("act composition law (right action on row vectors)") {
  auto Q = FieldTower::rationals();
  auto [T, z8] = adjoin_cyclotomic(Q, 8);
  FieldElement s2 = z8 + z8.inv();
  Mat2 g = Mat2::diag(z8, z8.inv());
  Mat2 h{z8 / s2, z8 / s2, -(z8.inv() / s2), z8.inv() / s2};
  std::vector<BivariatePoly> fs{mono(T, 3, 1), mono(T, 1, 0) + mono(T, 0, 2, Rat(2, 3)), mono(T, 2, 2, -1)};
  for (auto& f : fs) {
    REQUIRE(act(g * h, f) == act(g, act(h, f)));
    REQUIRE(act(h * g, f) == act(h, act(g, f)));
  }
}

TEST_CASE("reynolds over BD2") {
  auto Q = FieldTower::rationals();
  auto [T, i] = adjoin_cyclotomic(Q, 4);
  auto bd2 = build_bd2(T);
  REQUIRE(bd2.order() == 8);
  // x^4 -> (x^4+y^4)/2
  auto r = reynolds_over(bd2.elements(), mono(T, 4, 0));
  REQUIRE(r == (mono(T, 4, 0) + mono(T, 0, 4)) * Rat(1, 2));
  // x^2 y^2 already invariant
  auto v = mono(T, 2, 2);
  REQUIRE(reynolds_over(bd2.elements(), v) == v);
  // idempotent, and invariant under every group element
  REQUIRE(reynolds_over(bd2.elements(), r) == r);
  for (auto& g : bd2.elements()) REQUIRE(act(g, r) == r);
  // constants fixed
  auto one = mono(T, 0, 0);
  REQUIRE(reynolds_over(bd2.elements(), one) == one);
}

TEST_CASE("invariant space dimensions for BD2") {
  auto Q = FieldTower::rationals();
  auto [T, i] = adjoin_cyclotomic(Q, 4);
  auto bd2 = build_bd2(T);
  REQUIRE(invariant_space_over(bd2.elements(), T, 2).size() == 0);
  auto b4 = invariant_space_over(bd2.elements(), T, 4);
  REQUIRE(b4.size() == 2);
  for (auto& f : b4)
    for (auto& g : bd2.elements()) REQUIRE(act(g, f) == f);
}

TEST_CASE("kernel: examples and rank-nullity") {
  auto Q = FieldTower::rationals();
  auto O = [&](long v) { return FieldElement(Q, v); };
  std::vector<std::vector<FieldElement>> m{{O(1), O(1)}, {O(1), O(1)}};
  auto k = kernel(m, Q);
  REQUIRE(k.size() == 1);
  REQUIRE(k[0][0] == -k[0][1]);
  std::vector<std::vector<FieldElement>> id3{{O(1), O(0), O(0)}, {O(0), O(1), O(0)}, {O(0), O(0), O(1)}};
  REQUIRE(kernel(id3, Q).empty());
  std::vector<std::vector<FieldElement>> row{{O(2), O(-1), O(0)}};
  auto k2 = kernel(row, Q);
  REQUIRE(k2.size() == 2);
  for (auto& v : k2) REQUIRE((O(2) * v[0] - v[1]).is_zero());
  // rank + nullity = columns
  REQUIRE(matrix_rank(row, Q) + k2.size() == 3);
}

TEST_CASE("substitute: XY - Z^n vanishes on (x^n, y^n, xy)") {
  auto Q = FieldTower::rationals();
  for (int n : {2, 4, 7}) {
    TrivariatePoly F(Q);
    F.add_term(1, 1, 0, FieldElement::one(Q));
    F.add_term(0, 0, n, FieldElement(Q, -1));
    auto r = substitute(F, mono(Q, n, 0), mono(Q, 0, n), mono(Q, 1, 1));
    REQUIRE(r.is_zero());
  }
  // F = X returns A
  TrivariatePoly X(Q);
  X.add_term(1, 0, 0, FieldElement::one(Q));
  auto A = mono(Q, 3, 1) + mono(Q, 0, 2, Rat(5));
  REQUIRE(substitute(X, A, mono(Q, 1, 0), mono(Q, 0, 1)) == A);
}

TEST_CASE("relation w^2 = (u^2 - 4 v^n) v via substitute") {
  auto Q = FieldTower::rationals();
  for (int n : {2, 3, 4}) {
    auto u = mono(Q, 2 * n, 0) + mono(Q, 0, 2 * n);
    auto v = mono(Q, 2, 2);
    auto w = mono(Q, 2 * n + 1, 1) - mono(Q, 1, 2 * n + 1);
    // F(X, Y, Z) = Y^2 - (X^2 - 4 Z^n) Z with (u, w, v) in slots (X, Y, Z)
    TrivariatePoly F(Q);
    F.add_term(0, 2, 0, FieldElement::one(Q));
    F.add_term(2, 0, 1, FieldElement(Q, -1));
    F.add_term(0, 0, n + 1, FieldElement(Q, 4));
    REQUIRE(substitute(F, u, w, v).is_zero());
  }
}

TEST_CASE("molien series matches invariant dimensions for BD2") {
  auto Q = FieldTower::rationals();
  auto [T, i] = adjoin_cyclotomic(Q, 4);
  auto bd2 = build_bd2(T);
  auto mol = molien_series_over(bd2.elements(), T, 12);
  for (int d = 0; d <= 12; ++d) {
    auto dim = invariant_space_over(bd2.elements(), T, d).size();
    REQUIRE(Rat((long)dim) == mol[d]);
  }
}

TEST_CASE("canonical printing") {
  auto Q = FieldTower::rationals();
  auto f = mono(Q, 4, 0) + mono(Q, 0, 4);
  REQUIRE(f.str() == "x^4 + y^4");
  auto g = mono(Q, 1, 1, -1);
  REQUIRE(g.str() == "-xy");
  TrivariatePoly F(Q);
  F.add_term(2, 0, 0, FieldElement(Q, 2));
  F.add_term(0, 2, 0, FieldElement(Q, -1));
  F.add_term(0, 0, 3, FieldElement(Q, -8));
  REQUIRE(F.str() == "2X^2 - Y^2 - 8Z^3");
}
