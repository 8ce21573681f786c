#include <catch2/catch_amalgamated.hpp>

#include <rdp/mckay.hpp>

using namespace rdp;

static std::multiset<int> dim_multiset(const CharacterTable& t) {
  return std::multiset<int>(t.dims.begin(), t.dims.end());
}

TEST_CASE("character table of BD2: five irreducibles (1,1,1,1,2)") {
  auto Q = FieldTower::rationals();
  auto [T, z8] = adjoin_cyclotomic(Q, 8);
  auto bd2 = build_bd2(T);
  auto tab = character_table(bd2);
  REQUIRE(tab.num_irreducibles() == 5);
  REQUIRE(dim_multiset(tab) == std::multiset<int>{1, 1, 1, 1, 2});
}

TEST_CASE("character table of BD3*: class count and dims") {
  auto Q = FieldTower::rationals();
  auto [T, z12] = adjoin_cyclotomic(Q, 12);
  auto m = build_bd_star(3, T);
  auto tab = character_table(m);
  REQUIRE(dim_multiset(tab) == std::multiset<int>{1, 1, 1, 1, 2, 2});
}

TEST_CASE("character table of BO: 8 classes, dims (1,1,2,2,2,3,3,4)") {
  auto Q = FieldTower::rationals();
  auto [T, z8] = adjoin_cyclotomic(Q, 8);
  auto bo = build_bo(T);
  auto cc = bo.conjugacy_classes();
  REQUIRE(cc.rep.size() == 8);
  long total = 0;
  for (auto& m : cc.members) total += (long)m.size();
  REQUIRE(total == 48);
  auto tab = character_table(bo);
  REQUIRE(dim_multiset(tab) == std::multiset<int>{1, 1, 2, 2, 2, 3, 3, 4});
}

TEST_CASE("character table of BT*: 7 classes over Q(zeta24)") {
  auto Q = FieldTower::rationals();
  auto [T, z24] = adjoin_cyclotomic(Q, 24);
  auto bt = build_bt_star(T);
  REQUIRE(bt.conjugacy_classes().rep.size() == 7);
  auto tab = character_table(bt);
  REQUIRE(dim_multiset(tab) == std::multiset<int>{1, 1, 1, 2, 2, 2, 3});
}

TEST_CASE("character table of BI: 9 classes, dims (1,2,2,3,3,4,4,5,6)") {
  auto Q = FieldTower::rationals();
  auto [T, z5] = adjoin_cyclotomic(Q, 5);
  auto bi = build_bi(T);
  REQUIRE(bi.conjugacy_classes().rep.size() == 9);
  auto tab = character_table(bi);
  REQUIRE(dim_multiset(tab) == std::multiset<int>{1, 2, 2, 3, 3, 4, 4, 5, 6});
}

TEST_CASE("mckay graphs classify as the affine ADE diagrams") {
  auto Q = FieldTower::rationals();
  // mu_n -> affine A_{n-1}
  for (long n : {2L, 3L, 5L, 9L}) {
    auto g = mckay_graph_mu(n);
    REQUIRE(g.affine_null_vector_holds());
    auto lab = classify_dynkin(g, false);
    REQUIRE(lab == DynkinLabel{DynkinFamily::A, (int)n - 1, true});
  }
  // BD_n^* -> affine D_{n+2}
  for (long n : {2L, 3L, 4L}) {
    auto [T, z] = adjoin_cyclotomic(Q, std::max(4 * n, 8L));
    auto m = build_bd_star(n, T);
    auto tab = character_table(m);
    auto g = mckay_graph(tab);
    REQUIRE(g.affine_null_vector_holds());
    auto lab = classify_dynkin(g, false);
    REQUIRE(lab == DynkinLabel{DynkinFamily::D, (int)n + 2, true});
    auto fin = classify_dynkin(g, true);
    REQUIRE(fin == DynkinLabel{DynkinFamily::D, (int)n + 2, false});
  }
  // BT* -> E6, BO -> E7, BI -> E8
  {
    auto [T, z24] = adjoin_cyclotomic(Q, 24);
    auto tab = character_table(build_bt_star(T));
    auto g = mckay_graph(tab);
    REQUIRE(g.affine_null_vector_holds());
    REQUIRE(classify_dynkin(g, false) == DynkinLabel{DynkinFamily::E, 6, true});
    REQUIRE(classify_dynkin(g, true) == DynkinLabel{DynkinFamily::E, 6, false});
  }
  {
    auto [T, z8] = adjoin_cyclotomic(Q, 8);
    auto tab = character_table(build_bo(T));
    auto g = mckay_graph(tab);
    REQUIRE(g.affine_null_vector_holds());
    REQUIRE(classify_dynkin(g, false) == DynkinLabel{DynkinFamily::E, 7, true});
  }
  {
    auto [T, z5] = adjoin_cyclotomic(Q, 5);
    auto tab = character_table(build_bi(T));
    auto g = mckay_graph(tab);
    REQUIRE(g.affine_null_vector_holds());
    REQUIRE(classify_dynkin(g, false) == DynkinLabel{DynkinFamily::E, 8, true});
  }
}

TEST_CASE("BD2 finite graph is the star with three edges into rho") {
  auto Q = FieldTower::rationals();
  auto [T, z8] = adjoin_cyclotomic(Q, 8);
  auto tab = character_table(build_bd2(T));
  auto g = mckay_graph(tab);
  auto fin = g.remove_vertex(g.trivial_index);
  REQUIRE(fin.n == 4);
  REQUIRE(fin.rho_index >= 0);
  int edges_into_rho = 0;
  for (int i = 0; i < fin.n; ++i) edges_into_rho += fin.adj[fin.rho_index][i];
  REQUIRE(edges_into_rho == 3);
  REQUIRE(classify_dynkin(g, true) == DynkinLabel{DynkinFamily::D, 4, false});
}

TEST_CASE("graph automorphism groups") {
  auto Q = FieldTower::rationals();
  {
    auto [T, z8] = adjoin_cyclotomic(Q, 8);
    auto tab = character_table(build_bd2(T));
    auto fin = mckay_graph(tab).remove_vertex(tab.trivial_index);
    REQUIRE(graph_automorphisms(fin).size() == 6);  // S3 on D4
  }
  for (long n : {3L, 4L}) {
    auto [T, z] = adjoin_cyclotomic(Q, 4 * n);
    auto tab = character_table(build_bd_star(n, T));
    auto fin = mckay_graph(tab).remove_vertex(tab.trivial_index);
    REQUIRE(graph_automorphisms(fin).size() == 2);
  }
  {
    auto [T, z5] = adjoin_cyclotomic(Q, 5);
    auto tab = character_table(build_bi(T));
    auto fin = mckay_graph(tab).remove_vertex(tab.trivial_index);
    REQUIRE(graph_automorphisms(fin).size() == 1);  // E8
  }
  {
    auto [T, z8] = adjoin_cyclotomic(Q, 8);
    auto tab = character_table(build_bo(T));
    auto fin = mckay_graph(tab).remove_vertex(tab.trivial_index);
    REQUIRE(graph_automorphisms(fin).size() == 1);  // E7
  }
}

TEST_CASE("normalizer action on the graph: BO on BD2 gives S3, bijective") {
  auto Q = FieldTower::rationals();
  auto [T, z8] = adjoin_cyclotomic(Q, 8);
  auto bo = build_bo(T);
  auto bd2 = build_bd2(T);
  auto tab = character_table(bd2);
  auto act = normalizer_action_on_graph(bo, bd2, tab);
  REQUIRE(act.bijective);
  REQUIRE(act.image.size() == 6);
}

TEST_CASE("normalizer action: BO on BT* gives Z/2") {
  auto Q = FieldTower::rationals();
  auto [T, z24] = adjoin_cyclotomic(Q, 24);
  auto bo = build_bo(T);
  auto bt = build_bt_star(T);
  auto tab = character_table(bt);
  auto act = normalizer_action_on_graph(bo, bt, tab);
  REQUIRE(act.bijective);
  REQUIRE(act.image.size() == 2);
}

TEST_CASE("normalizer action: BD_2n^* on BD_n^* gives Z/2 (n=3)") {
  auto Q = FieldTower::rationals();
  auto [T, z12] = adjoin_cyclotomic(Q, 12);
  auto big = build_bd_star(6, T);
  auto small = build_bd_star(3, T);
  auto tab = character_table(small);
  auto act = normalizer_action_on_graph(big, small, tab);
  REQUIRE(act.bijective);
  REQUIRE(act.image.size() == 2);
}

TEST_CASE("normalizer action: trivial for BO and BI on themselves") {
  auto Q = FieldTower::rationals();
  {
    auto [T, z8] = adjoin_cyclotomic(Q, 8);
    auto bo = build_bo(T);
    auto tab = character_table(bo);
    auto act = normalizer_action_on_graph(bo, bo, tab);
    REQUIRE(act.image.size() == 1);
  }
  {
    auto [T, z5] = adjoin_cyclotomic(Q, 5);
    auto bi = build_bi(T);
    auto tab = character_table(bi);
    auto act = normalizer_action_on_graph(bi, bi, tab);
    REQUIRE(act.image.size() == 1);
  }
}

TEST_CASE("fold lookup") {
  REQUIRE(fold({DynkinFamily::A, 5, false}, 2) == DynkinLabel{DynkinFamily::B, 3, false});
  REQUIRE(fold({DynkinFamily::A, 4, false}, 2) == DynkinLabel{DynkinFamily::B, 2, false});
  REQUIRE(fold({DynkinFamily::D, 4, false}, 6) == DynkinLabel{DynkinFamily::G, 2, false});
  REQUIRE(fold({DynkinFamily::D, 4, false}, 3) == DynkinLabel{DynkinFamily::G, 2, false});
  REQUIRE(fold({DynkinFamily::D, 4, false}, 2) == DynkinLabel{DynkinFamily::C, 3, false});
  REQUIRE(fold({DynkinFamily::D, 5, false}, 2) == DynkinLabel{DynkinFamily::C, 4, false});
  REQUIRE(fold({DynkinFamily::E, 6, false}, 2) == DynkinLabel{DynkinFamily::F, 4, false});
  REQUIRE(fold({DynkinFamily::E, 8, false}, 1) == DynkinLabel{DynkinFamily::E, 8, false});
  REQUIRE_THROWS_AS(fold({DynkinFamily::E, 8, false}, 2), UnsupportedFold);
}

TEST_CASE("DOT output is deterministic and marks special vertices") {
  auto g = mckay_graph_mu(3);
  auto s1 = graph_dot(g);
  auto s2 = graph_dot(g);
  REQUIRE(s1 == s2);
  REQUIRE(s1.find("doublecircle") != std::string::npos);
}
