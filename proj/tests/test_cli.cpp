#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <rdp/cli.hpp>

using namespace rdp;

static std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str()};
}

TEST_CASE("equation command matches the documented string") {
  auto [code, out] = run_cli({"equation", "--type", "B", "--d", "2", "--n", "3"});
  REQUIRE(code == 0);
  auto j = Json::parse(out);
  REQUIRE(j.at("equation").get<std::string>() == "2X^2 - Y^2 - 8Z^3");
  REQUIRE(j.at("label").get<std::string>() == "B1");
  REQUIRE(j.contains("transcript"));
}

TEST_CASE("equation: C, F4, E7 shapes") {
  {
    auto [code, out] = run_cli({"equation", "--type", "C", "--n", "3", "--d", "2"});
    REQUIRE(code == 0);
    auto j = Json::parse(out);
    REQUIRE(j.at("equation").get<std::string>() == "-X^2Z + Y^2 - 8Z^4");
    REQUIRE(j.at("label").get<std::string>() == "C4");
  }
  {
    auto [code, out] = run_cli({"equation", "--type", "F4", "--d", "2"});
    REQUIRE(code == 0);
    auto j = Json::parse(out);
    REQUIRE(j.at("equation").get<std::string>() == "X^2 - 8Y^4 - Z^3");
  }
  {
    auto [code, out] = run_cli({"equation", "--type", "E7"});
    REQUIRE(code == 0);
    auto j = Json::parse(out);
    REQUIRE(j.at("equation").get<std::string>() == "X^2 + 4Y^3 - YZ^3");
  }
}

TEST_CASE("equation over a prime field") {
  auto [code, out] = run_cli({"equation", "--type", "B", "--d", "1", "--n", "5", "--field", "Fp:2"});
  REQUIRE(code == 0);
  auto j = Json::parse(out);
  REQUIRE(j.at("equation").get<std::string>() == "X^2 + XY + Y^2 + Z^5");  // -1 = 1 mod 2
}

TEST_CASE("mckay json for mu_5 is the 5-cycle") {
  auto [code, out] = run_cli({"mckay", "--group", "mu", "--n", "5", "--format", "json"});
  REQUIRE(code == 0);
  auto j = Json::parse(out);
  REQUIRE(j.at("vertices").size() == 5);
  REQUIRE(j.at("affine_type").get<std::string>() == "A4~");
  auto adj = j.at("adjacency");
  for (int i = 0; i < 5; ++i) {
    int deg = 0;
    for (int k = 0; k < 5; ++k) deg += adj[i][k].get<int>();
    REQUIRE(deg == 2);
    REQUIRE(adj[i][(i + 1) % 5].get<int>() == 1);
  }
}

TEST_CASE("mckay dot output is deterministic with the marked vertices") {
  auto r1 = run_cli({"mckay", "--group", "bd2", "--format", "dot"});
  auto r2 = run_cli({"mckay", "--group", "bd2", "--format", "dot"});
  REQUIRE(r1.first == 0);
  REQUIRE(r1.second == r2.second);
  REQUIRE(r1.second.find("doublecircle") != std::string::npos);
  REQUIRE(r1.second.find("shape=box") != std::string::npos);
}

TEST_CASE("verify --suite split reports five cases and exits 0") {
  auto [code, out] = run_cli({"verify", "--suite", "split"});
  REQUIRE(code == 0);
  REQUIRE(out.find("5/5 cases verified") != std::string::npos);
  // one PASS line per case
  size_t count = 0, pos = 0;
  while ((pos = out.find("[PASS]", pos)) != std::string::npos) { ++count; ++pos; }
  REQUIRE(count == 5);
}

TEST_CASE("verify is deterministic under --jobs") {
  auto r1 = run_cli({"verify", "--suite", "reps"});
  auto r2 = run_cli({"verify", "--suite", "reps", "--jobs", "3"});
  REQUIRE(r1.first == 0);
  REQUIRE(r2.first == 0);
  REQUIRE(r1.second == r2.second);
}

TEST_CASE("table output and char filter") {
  auto [code, out] = run_cli({"table"});
  REQUIRE(code == 0);
  REQUIRE(out.find("XY = Z^n") != std::string::npos);
  auto [code2, out2] = run_cli({"table", "--char", "2"});
  REQUIRE(code2 == 0);
  REQUIRE(out2.find("dX^2 + XY + Y^2 = Z^n") != std::string::npos);
  REQUIRE(out2.find("G2") == std::string::npos);
}

TEST_CASE("invariants command") {
  auto [code, out] = run_cli({"invariants", "--group", "bd-star", "--n", "4"});
  REQUIRE(code == 0);
  auto j = Json::parse(out);
  REQUIRE(j.at("verified").get<bool>());
  REQUIRE(j.at("generators").size() == 3);
  // char-p variant of the same generators
  auto [code2, out2] = run_cli({"invariants", "--group", "bd-star", "--n", "4", "--char", "7"});
  REQUIRE(code2 == 0);
  auto j2 = Json::parse(out2);
  REQUIRE(j2.at("verified").get<bool>());
}

TEST_CASE("twists command with a quadratic and a cubic extension") {
  {
    auto [code, out] = run_cli({"twists", "--group", "bd2", "--field", "Q", "--d", "5"});
    REQUIRE(code == 0);
    auto j = Json::parse(out);
    REQUIRE(j.at("galois").get<std::string>() == "Z/2");
    REQUIRE(j.at("descriptors").size() == 2);
    bool c3 = false;
    for (auto& d : j.at("descriptors"))
      if (d.at("label").get<std::string>() == "C3") {
        c3 = true;
        REQUIRE(d.contains("equation"));
      }
    REQUIRE(c3);
  }
  {
    auto [code, out] = run_cli({"twists", "--group", "bd2", "--field", "Q", "--ext-cubic", "t^3-t-1"});
    REQUIRE(code == 0);
    auto j = Json::parse(out);
    REQUIRE(j.at("galois").get<std::string>() == "S3");
    REQUIRE(j.at("descriptors").size() == 3);
    bool g2 = false;
    for (auto& d : j.at("descriptors"))
      if (d.at("injective").get<bool>()) {
        g2 = d.at("label").get<std::string>() == "G2";
        REQUIRE(d.contains("equation"));
      }
    REQUIRE(g2);
  }
}

TEST_CASE("usage errors exit 2, computation failures exit 1") {
  std::ostringstream out, err;
  REQUIRE(cli::run({"equation", "--type", "Q9"}, out, err) == 2);
  REQUIRE(cli::run({}, out, err) == 2);
  REQUIRE(cli::run({"nonsense"}, out, err) == 2);
  // d = 4 is a square: LabelMismatch is a computation failure
  std::ostringstream out2, err2;
  REQUIRE(cli::run({"equation", "--type", "B", "--d", "4", "--n", "3"}, out2, err2) == 1);
  REQUIRE(err2.str().find("error") != std::string::npos);
}

TEST_CASE("cubic parser") {
  auto c = cli::parse_univariate("t^3 - t - 1");
  REQUIRE(c == std::vector<Rat>{-1, -1, 0, 1});
  auto c2 = cli::parse_univariate("t^3+2t+1");
  REQUIRE(c2 == std::vector<Rat>{1, 2, 0, 1});
  REQUIRE_THROWS_AS(cli::parse_univariate(""), cli::UsageError);
}

TEST_CASE("tower and element JSON round-trip to the identical canonical form") {
  auto Q = FieldTower::rationals();
  auto [T, z24] = adjoin_cyclotomic(Q, 24);
  auto [T2, sd] = adjoin_sqrt(T, 7, "s7");
  FieldElement e = (z24.lift(T2) + sd) * Rat(3, 7) - Rat(2);
  auto tj = tower_to_json(T2);
  auto T3 = tower_from_json(tj);
  REQUIRE(T3->same_description(*T2));
  auto ej = element_to_json(e);
  auto e2 = element_from_json(T3, ej);
  // canonical equality across the description-equal towers
  REQUIRE(e2 == FieldElement(T3, e.val()));
  REQUIRE(element_to_json(e2) == ej);
  // finite tower round-trip
  auto F7 = FieldTower::prime_field(7);
  auto [T7, z8] = adjoin_cyclotomic(F7, 8);
  FieldElement f = z8 * Rat(3) + Rat(5);
  auto T7b = tower_from_json(tower_to_json(T7));
  REQUIRE(T7b->same_description(*T7));
  REQUIRE(element_to_json(element_from_json(T7b, element_to_json(f))) == element_to_json(f));
}

TEST_CASE("polynomial JSON export shape") {
  auto Q = FieldTower::rationals();
  auto f = BivariatePoly::monomial(Q, 4, 0) + BivariatePoly::monomial(Q, 0, 4);
  auto j = bipoly_to_json(f);
  REQUIRE(j.at("terms").size() == 2);
  REQUIRE(j.at("terms")[0].at("exp") == Json::array({4, 0}));
}

TEST_CASE("model JSON export includes elements and twist data") {
  auto Q = FieldTower::rationals();
  auto [T, z12] = adjoin_cyclotomic(Q, 12);
  auto tg = build_bd_twisted(3, T);
  auto j = model_to_json(tg.model, &tg.datum);
  REQUIRE(j.at("order").get<int>() == 12);
  REQUIRE(j.at("elements").size() == 12);
  REQUIRE(j.contains("twist"));
}
