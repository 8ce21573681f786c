#include <catch2/catch_amalgamated.hpp>

#include <rdp/fieldtower.hpp>

using namespace rdp;

TEST_CASE("adjoin sqrt2 and basic arithmetic") {
  auto Q = FieldTower::rationals();
  auto [T, s2] = adjoin_sqrt(Q, 2, "sqrt2");
  REQUIRE(T->degree() == 2);
  REQUIRE((s2 * s2).as_rational() == Rat(2));
  // inverse of 1+sqrt2 is -1+sqrt2
  FieldElement one = FieldElement::one(T);
  FieldElement x = one + s2;
  FieldElement xi = x.inv();
  REQUIRE(xi == s2 - Rat(1));
  REQUIRE((x * xi).is_one());
}

TEST_CASE("adjoin rejects reducible and non-monic") {
  auto Q = FieldTower::rationals();
  std::vector<FieldElement> tm4{FieldElement(Q, -4), FieldElement::zero(Q), FieldElement::one(Q)};
  REQUIRE_THROWS_AS(adjoin_named(Q, "g", tm4), ReduciblePolynomial);
  std::vector<FieldElement> nm{FieldElement(Q, 1), FieldElement::zero(Q), FieldElement(Q, 2)};
  REQUIRE_THROWS_AS(adjoin_named(Q, "g", nm), NonMonic);
}

TEST_CASE("F2 Artin-Schreier extension") {
  auto F2 = FieldTower::prime_field(2);
  std::vector<FieldElement> f{FieldElement::one(F2), FieldElement::one(F2), FieldElement::one(F2)};
  auto T = adjoin_named(F2, "a", f, LevelKind::ArtinSchreier);
  REQUIRE(T->degree() == 2);
  auto a = FieldElement::generator(T, 0);
  REQUIRE(a * a + a == FieldElement::one(T));  // alpha^2+alpha = 1 over F_2
}

TEST_CASE("cyclotomic over Q") {
  auto Q = FieldTower::rationals();
  auto [T8, z8] = adjoin_cyclotomic(Q, 8);
  REQUIRE(T8->degree() == 4);
  REQUIRE(z8.pow(4) == FieldElement(T8, -1));
  // (z8 + z8^-1)^2 = 2
  auto s = z8 + z8.inv();
  REQUIRE((s * s).as_rational() == Rat(2));
  // registry: sqrt(2) and i derivable
  REQUIRE(T8->find_sqrt_rational(2).has_value());
  REQUIRE(T8->find_sqrt_rational(-1).has_value());
  REQUIRE(T8->find_sqrt_rational(-2).has_value());
  REQUIRE(!T8->find_sqrt_rational(3).has_value());
}

TEST_CASE("zeta8 located inside Q(zeta24)") {
  auto Q = FieldTower::rationals();
  auto [T, z24] = adjoin_cyclotomic(Q, 24);
  REQUIRE(T->degree() == 8);
  auto [T2, z8] = adjoin_cyclotomic(T, 8);
  REQUIRE(T2 == T);  // unchanged tower
  REQUIRE(z8 == z24.pow(3));
}

TEST_CASE("F7 needs quadratic extension for zeta8") {
  auto F7 = FieldTower::prime_field(7);
  auto [T, z8] = adjoin_cyclotomic(F7, 8);
  REQUIRE(T->degree() == 2);  // ord_8(7) = 2
  REQUIRE(z8.pow(8).is_one());
  REQUIRE(!z8.pow(4).is_one());
}

TEST_CASE("automorphism group of Q(sqrt d)") {
  auto Q = FieldTower::rationals();
  auto [T, sd] = adjoin_sqrt(Q, 5, "sqrt5");
  auto G = automorphism_group(T, {{-sd}});
  REQUIRE(G.size() == 2);
  REQUIRE(G[1](sd) == -sd);
}

TEST_CASE("Gal(Q(zeta5)/Q) is cyclic of order 4") {
  auto Q = FieldTower::rationals();
  auto [T, z5] = adjoin_cyclotomic(Q, 5);
  auto G = automorphism_group(T, {{z5.pow(3)}});
  REQUIRE(G.size() == 4);
  // sigma has order 4
  REQUIRE(G[1].order() == 4);
}

TEST_CASE("splitting tower of t^3 - t - 1 has Galois group of order 6") {
  auto Q = FieldTower::rationals();
  // adjoin theta0
  std::vector<FieldElement> cubic{FieldElement(Q, -1), FieldElement(Q, -1), FieldElement::zero(Q),
                                  FieldElement::one(Q)};
  auto T1 = adjoin_named(Q, "th", cubic, LevelKind::CubicRational);
  // discriminant of t^3+at+b with a=-1,b=-1: -4a^3-27b^2 = -23
  auto [T, sD] = adjoin_sqrt(T1, -23, "sqrtD");
  REQUIRE(T->degree() == 6);
  auto th0 = FieldElement::generator(T, 0).lift(T);
  // theta1 = (-theta0 + sqrtD/(3 theta0^2 + a))/2
  auto a = FieldElement(T, -1);
  auto th1 = (-th0 + sD / (th0 * th0 * Rat(3) + a)) / Rat(2);
  auto th2 = -th0 - th1;
  // all three are roots
  for (auto& r : {th0, th1, th2}) REQUIRE((r * r * r - r - Rat(1)).is_zero());
  // sigma: th0 -> th1, sqrtD fixed; tau: th0 fixed, sqrtD -> -sqrtD
  auto G = automorphism_group(T, {{th1, sD}, {th0, -sD}});
  REQUIRE(G.size() == 6);
}

TEST_CASE("automorphism respects field operations (property)") {
  auto Q = FieldTower::rationals();
  auto [T, z] = adjoin_cyclotomic(Q, 12);
  auto G = automorphism_group(T, {{z.pow(5)}, {z.pow(7)}});
  REQUIRE(G.size() == 4);
  std::vector<FieldElement> samples;
  for (int i = 0; i < 4; ++i) {
    FieldElement e = z.pow(i) * Rat(i + 1) + FieldElement(T, Rat(3, 7)) - z * Rat(2 * i);
    samples.push_back(e);
  }
  for (auto& phi : G.elements())
    for (auto& x : samples)
      for (auto& y : samples) {
        REQUIRE(phi(x + y) == phi(x) + phi(y));
        REQUIRE(phi(x * y) == phi(x) * phi(y));
      }
  for (auto& phi : G.elements()) REQUIRE(phi(FieldElement(T, Rat(22, 7))) == FieldElement(T, Rat(22, 7)));
}

TEST_CASE("Frobenius is an automorphism with the predicted order") {
  auto F3 = FieldTower::prime_field(3);
  auto [T, z8] = adjoin_cyclotomic(F3, 8);  // F9
  REQUIRE(T->degree() == 2);
  Automorphism frob(T, {z8.pow(3)});
  REQUIRE(frob.order() == 2);
}

TEST_CASE("fixed field of the full group is the base (averaging rank)") {
  auto Q = FieldTower::rationals();
  auto [T, z5] = adjoin_cyclotomic(Q, 5);
  auto G = automorphism_group(T, {{z5.pow(2)}});
  REQUIRE(G.size() == 4);
  // average of basis elements lands in Q
  for (int i = 0; i < 4; ++i) {
    FieldElement avg = FieldElement::zero(T);
    for (auto& phi : G.elements()) avg = avg + phi(z5.pow(i));
    REQUIRE(avg.as_rational().has_value());
  }
  // distinct images on a primitive element
  auto prim = z5;
  std::vector<FieldElement> imgs;
  for (auto& phi : G.elements()) {
    auto v = phi(prim);
    for (auto& w : imgs) REQUIRE(v != w);
    imgs.push_back(v);
  }
}

TEST_CASE("non-automorphism rejected") {
  auto Q = FieldTower::rationals();
  auto [T, s2] = adjoin_sqrt(Q, 2, "s");
  REQUIRE_THROWS_AS(Automorphism(T, {s2 + Rat(1)}), NotAnAutomorphism);
}
