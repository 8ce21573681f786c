// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <iostream>

#include <rdp/verify.hpp>

using namespace rdp;

namespace {

struct Criterion {
  std::string name;
  std::vector<VerifyCase> cases;
};

int run_criterion(int idx, const Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto results = run_cases(c.cases, 1);
  auto t1 = std::chrono::steady_clock::now();
  int fails = 0;
  std::string why;
  for (auto& r : results)
    if (!r.pass) {
      ++fails;
      if (why.empty()) why = r.name + ": " + r.detail;
    }
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::cout << "criterion " << idx << ": " << (fails == 0 ? "PASS" : "FAIL") << " - " << c.name << " ("
            << results.size() << " checks, " << (long)(secs * 1000) << " ms)";
  if (fails) std::cout << "  [" << why << "]";
  std::cout << "\n";
  return fails;
}

std::vector<VerifyCase> pick(const std::vector<VerifyCase>& all, std::initializer_list<const char*> needles) {
  std::vector<VerifyCase> out;
  std::set<std::string> seen;
  for (auto& c : all)
    for (auto* n : needles)
      if (c.name.find(n) != std::string::npos && seen.insert(c.name).second) out.push_back(c);
  return out;
}

}  // namespace

int main() {
  auto split = cases_split();
  auto twists = cases_twists();
  auto mckay = cases_mckay();
  auto norms = cases_normalizers();
  auto reps = cases_reps();

  std::vector<Criterion> criteria = {
      {"split identities (A, D, E6, E7, E8) with exact zero residuals", split},
      {"twisted identities (B, char-2 B, C, F4, C3, G2 incl. Kummer and char 3) matched to templates",
       pick(twists, {"B over", "char-2 B", "C_{n+1}", "F4 with", "C3 with", "G2 over", "G2 Kummer",
                     "char-3 G2"})},
      {"group orders 4n, 48, 24, 120 and the icosahedral presentation", pick(norms, {"group orders"})},
      {"trichotomy of the 48 octahedral elements and the sign map case table",
       pick(norms, {"trichotomy", "sign map"})},
      {"McKay graphs classify as affine A/D/E with exact null vectors",
       pick(mckay, {"mu_n ->", "BD_n^* ->", "BT* -> affine"})},
      {"N(G)/G acts bijectively on the graph (S3, Z/2, Z/2, trivial, trivial)",
       pick(mckay, {"N(G)/G"})},
      {"normalizer computations and the mu_n monomial normalizer",
       pick(norms, {"normalizer computations", "monomial matrices"})},
      {"twist enumeration counts and folding of injective classes",
       pick(twists, {"twist enumeration", "base change"})},
      {"descended representations of BD_n for n = 2, 3, 4", reps},
      {"Molien series oracle matches invariant dimensions up to degree 12", pick(mckay, {"Molien"})},
  };

  auto t0 = std::chrono::steady_clock::now();
  int total_fails = 0;
  for (size_t i = 0; i < criteria.size(); ++i) total_fails += run_criterion((int)i + 1, criteria[i]);
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::cout << (total_fails == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (total " << (long)secs
            << " s)\n";
  return total_fails == 0 ? 0 : 1;
}
