// Character tables by tensor closure, McKay graphs, affine/finite Dynkin
// recognition, graph automorphisms, the N(G)/G action on the graph, and
// diagram folding for twisted types.
#pragma once

#include <functional>
#include <numeric>

#include "groupmodels.hpp"

namespace rdp {

struct NonTerminating : std::runtime_error {
  explicit NonTerminating(const std::string& m) : std::runtime_error("NonTerminating: " + m) {}
};
struct MissingRootsOfUnity : std::runtime_error {
  explicit MissingRootsOfUnity(const std::string& m) : std::runtime_error("MissingRootsOfUnity: " + m) {}
};
struct NotADEShape : std::runtime_error {
  explicit NotADEShape(const std::string& m) : std::runtime_error("NotADEShape: " + m) {}
};
struct UnsupportedFold : std::runtime_error {
  explicit UnsupportedFold(const std::string& m) : std::runtime_error("UnsupportedFold: " + m) {}
};
struct KernelMismatch : std::runtime_error {
  explicit KernelMismatch(const std::string& m) : std::runtime_error("KernelMismatch: " + m) {}
};
struct NotSurjective : std::runtime_error {
  explicit NotSurjective(const std::string& m) : std::runtime_error("NotSurjective: " + m) {}
};

class CharacterTable {
 public:
  EtaleGroupModel::ConjClasses classes;
  std::vector<int> class_size;
  std::vector<int> inv_class;                      // class of the inverse
  std::vector<std::vector<FieldElement>> chars;    // per irreducible: value per class
  std::vector<int> dims;
  int trivial_index = -1;
  int rho_index = -1;
  TowerPtr tower;
  long group_order = 0;

  int num_irreducibles() const { return (int)chars.size(); }

  FieldElement inner(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) const {
    FieldElement s = FieldElement::zero(tower);
    for (size_t c = 0; c < a.size(); ++c) s = s + a[c] * b[inv_class[c]] * Rat(class_size[c]);
    return s / Rat(group_order);
  }
  // multiplicity of irreducible i in the class function v; must be a
  // non-negative rational integer
  long multiplicity(const std::vector<FieldElement>& v, int i) const {
    FieldElement m = inner(v, chars[i]);
    auto r = m.as_rational();
    if (!r || detail::den(*r) != 1 || *r < 0) throw NonTerminating("non-integral multiplicity");
    return r->get_num().get_si();
  }
};

namespace detail_mckay {

// all characters of the abelian quotient G/K as class functions on G
inline std::vector<std::vector<FieldElement>> abelian_quotient_characters(const EtaleGroupModel& g,
                                                                          const std::vector<int>& K) {
  auto t = g.tower();
  std::set<int> kset(K.begin(), K.end());
  // cosets: map element -> coset id, reps
  std::vector<int> coset_of(g.order(), -1);
  std::vector<int> reps;
  for (int i = 0; i < g.order(); ++i) {
    if (coset_of[i] >= 0) continue;
    int id = (int)reps.size();
    reps.push_back(i);
    for (int k : K) coset_of[g.mul(i, k)] = id;
    if (coset_of[i] != id) throw std::runtime_error("coset decomposition failed");
  }
  int q = (int)reps.size();
  std::vector<std::vector<int>> qmul(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) qmul[a][b] = coset_of[g.mul(reps[a], reps[b])];
  int qid = coset_of[g.identity_index()];
  auto qorder = [&](int a) {
    int o = 1, cur = a;
    while (cur != qid) { cur = qmul[cur][a]; ++o; }
    return o;
  };
  // greedy generators
  std::vector<int> gens;
  std::vector<char> span(q, 0);
  span[qid] = 1;
  int covered = 1;
  for (int a = 0; a < q && covered < q; ++a) {
    if (span[a]) continue;
    gens.push_back(a);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < q; ++x)
        if (span[x] && !span[qmul[x][a]]) { span[qmul[x][a]] = 1; ++covered; grew = true; }
    }
  }
  // value candidates per generator: all roots of unity of order dividing ord(gen)
  std::vector<std::vector<FieldElement>> cand;
  for (int a : gens) {
    int o = qorder(a);
    auto r = t->find_root_of_unity(o);
    if (!r) throw MissingRootsOfUnity("exponent " + std::to_string(o) + " roots of unity required");
    FieldElement z(t, *r);
    std::vector<FieldElement> vals;
    for (int e = 0; e < o; ++e) vals.push_back(z.pow(e));
    cand.push_back(vals);
  }
  std::vector<std::vector<FieldElement>> out;
  std::vector<size_t> pick(gens.size(), 0);
  while (true) {
    // propagate values over the quotient
    std::vector<FieldElement> f(q);
    std::vector<char> has(q, 0);
    f[qid] = FieldElement::one(t);
    has[qid] = 1;
    bool consistent = true, grew = true;
    while (grew && consistent) {
      grew = false;
      for (int x = 0; x < q && consistent; ++x) {
        if (!has[x]) continue;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
          int y = qmul[x][gens[gi]];
          FieldElement v = f[x] * cand[gi][pick[gi]];
          if (!has[y]) { f[y] = v; has[y] = 1; grew = true; }
          else if (!(f[y] == v)) { consistent = false; break; }
        }
      }
    }
    for (int x = 0; x < q; ++x)
      if (!has[x]) consistent = false;
    if (consistent) {
      // full homomorphism check
      for (int a = 0; a < q && consistent; ++a)
        for (int b = 0; b < q; ++b)
          if (!(f[qmul[a][b]] == f[a] * f[b])) { consistent = false; break; }
      if (consistent) {
        std::vector<FieldElement> onG(g.order());
        for (int i = 0; i < g.order(); ++i) onG[i] = f[coset_of[i]];
        out.push_back(onG);
      }
    }
    size_t gi = 0;
    for (; gi < gens.size(); ++gi) {
      if (++pick[gi] < cand[gi].size()) break;
      pick[gi] = 0;
    }
    if (gi == gens.size()) break;
    if (gens.empty()) break;
  }
  if (gens.empty()) out.push_back(std::vector<FieldElement>(g.order(), FieldElement::one(t)));
  return out;
}

// automorphisms of a single-level cyclotomic tower
inline std::vector<Automorphism> cyclotomic_automorphisms(const TowerPtr& t) {
  std::vector<Automorphism> out;
  if (t->num_levels() != 1 || t->level(0).kind != LevelKind::Cyclotomic) return out;
  long n = 0;
  for (auto& f : t->root_facts()) n = std::max(n, f.n);
  if (n == 0) return out;
  FieldElement z = FieldElement::generator(t, 0);
  for (long k = 2; k < n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    try {
      out.emplace_back(t, std::vector<FieldElement>{z.pow(k)});
    } catch (const NotAnAutomorphism&) {
    }
  }
  return out;
}

}  // namespace detail_mckay

// Tensor-closure character table: starts from the trivial character and the
// trace of the embedding, seeds the one-dimensional characters from the
// abelianization, and repeatedly decomposes products against the known
// irreducibles; remainders of self-inner-product 1 are new irreducibles.
// Galois conjugates of knowns are added along the way.  Terminates when
// sum dim^2 = |G|.
inline CharacterTable character_table(const EtaleGroupModel& g) {
  auto t = g.tower();
  CharacterTable tab;
  tab.tower = t;
  tab.group_order = g.order();
  tab.classes = g.conjugacy_classes();
  int nc = (int)tab.classes.rep.size();
  for (auto& m : tab.classes.members) tab.class_size.push_back((int)m.size());
  tab.inv_class.resize(nc);
  for (int c = 0; c < nc; ++c) tab.inv_class[c] = tab.classes.class_of[g.inverse(tab.classes.rep[c])];

  auto value_vec = [&](const std::function<FieldElement(int)>& f) {
    std::vector<FieldElement> v;
    for (int c = 0; c < nc; ++c) v.push_back(f(tab.classes.rep[c]));
    return v;
  };
  std::vector<FieldElement> triv = value_vec([&](int) { return FieldElement::one(t); });
  std::vector<FieldElement> rho = value_vec([&](int i) { return g.elements()[i].trace(); });

  auto add_irr = [&](const std::vector<FieldElement>& v) -> bool {
    for (auto& c : tab.chars)
      if (c == v) return false;
    auto d = v[tab.classes.class_of[g.identity_index()]].as_rational();
    if (!d || detail::den(*d) != 1 || *d <= 0) throw NonTerminating("bad dimension");
    tab.chars.push_back(v);
    tab.dims.push_back((int)d->get_num().get_si());
    return true;
  };
  add_irr(triv);

  // seed 1-dimensional characters from the abelianization
  auto K = g.commutator_subgroup();
  for (auto& onG : detail_mckay::abelian_quotient_characters(g, K)) {
    std::vector<FieldElement> v;
    for (int c = 0; c < nc; ++c) v.push_back(onG[tab.classes.rep[c]]);
    add_irr(v);
  }
  if (!(tab.inner(rho, rho) == FieldElement::one(t)))
    throw NonTerminating("defining character not irreducible");
  add_irr(rho);

  auto autos = detail_mckay::cyclotomic_automorphisms(t);
  auto galois_image = [&](const std::vector<FieldElement>& v, const Automorphism& s) {
    std::vector<FieldElement> out(nc, FieldElement::zero(t));
    for (int c = 0; c < nc; ++c) {
      Mat2 im = g.elements()[tab.classes.rep[c]].map_coeffs(s);
      int j = g.find(im);
      if (j < 0) throw NonTerminating("model not Galois stable");
      out[tab.classes.class_of[j]] = s(v[c]);
    }
    return out;
  };

  long target = g.order();
  auto sumsq = [&]() {
    long s = 0;
    for (int d : tab.dims) s += (long)d * d;
    return s;
  };
  int guard = 0;
  while (sumsq() < target) {
    if (++guard > 64) throw NonTerminating("tensor closure did not converge");
    bool progressed = false;
    // Galois closure of knowns
    size_t known_now = tab.chars.size();
    for (size_t i = 0; i < known_now; ++i)
      for (auto& s : autos) {
        auto im = galois_image(tab.chars[i], s);
        FieldElement nrm = tab.inner(im, im);
        if (nrm == FieldElement::one(t) && add_irr(im)) progressed = true;
      }
    // products of knowns
    known_now = tab.chars.size();
    for (size_t i = 0; i < known_now && sumsq() < target; ++i)
      for (size_t j = 0; j < known_now && sumsq() < target; ++j) {
        std::vector<FieldElement> prod(nc);
        for (int c = 0; c < nc; ++c) prod[c] = tab.chars[i][c] * tab.chars[j][c];
        std::vector<FieldElement> rem = prod;
        for (int k = 0; k < (int)tab.chars.size(); ++k) {
          long m = tab.multiplicity(rem, k);
          if (m == 0) continue;
          for (int c = 0; c < nc; ++c) rem[c] = rem[c] - tab.chars[k][c] * Rat(m);
        }
        bool zero = true;
        for (auto& x : rem)
          if (!x.is_zero()) { zero = false; break; }
        if (zero) continue;
        FieldElement nrm = tab.inner(rem, rem);
        if (nrm == FieldElement::one(t)) {
          if (add_irr(rem)) progressed = true;
        }
      }
    if (!progressed && sumsq() < target) throw NonTerminating("tensor closure stalled");
  }
  if (sumsq() != target) throw NonTerminating("sum of squared dimensions mismatch");

  // canonical order: trivial first, then by (dim, rendered values)
  std::vector<int> order(tab.chars.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  auto keyof = [&](int i) {
    std::string s;
    for (auto& v : tab.chars[i]) s += tab.tower->to_string(tab.tower->num_levels(), v.val()) + ";";
    return s;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    bool ta = tab.chars[a] == triv, tb = tab.chars[b] == triv;
    if (ta != tb) return ta;
    if (tab.dims[a] != tab.dims[b]) return tab.dims[a] < tab.dims[b];
    return keyof(a) < keyof(b);
  });
  std::vector<std::vector<FieldElement>> cs;
  std::vector<int> ds;
  for (int i : order) { cs.push_back(tab.chars[i]); ds.push_back(tab.dims[i]); }
  tab.chars = cs;
  tab.dims = ds;
  tab.trivial_index = 0;
  for (size_t i = 0; i < tab.chars.size(); ++i)
    if (tab.chars[i] == rho) tab.rho_index = (int)i;
  if (tab.rho_index < 0) throw NonTerminating("embedding character lost");

  // orthonormality
  for (size_t i = 0; i < tab.chars.size(); ++i)
    for (size_t j = 0; j < tab.chars.size(); ++j) {
      FieldElement ip = tab.inner(tab.chars[i], tab.chars[j]);
      FieldElement want = i == j ? FieldElement::one(t) : FieldElement::zero(t);
      if (!(ip == want)) throw NonTerminating("character table not orthonormal");
    }
  if ((int)tab.chars.size() != nc) throw NonTerminating("row count differs from class count");
  return tab;
}

struct McKayGraph {
  int n = 0;
  std::vector<int> dims;
  std::vector<std::vector<int>> adj;
  int trivial_index = -1;
  int rho_index = -1;  // -1 when rho is not an irreducible vertex (mu_n)

  bool affine_null_vector_holds() const {
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int j = 0; j < n; ++j) s += (long)adj[i][j] * dims[j];
      if (s != 2L * dims[i]) return false;
    }
    return true;
  }
  int degree(int v) const {
    int d = 0;
    for (int j = 0; j < n; ++j) d += adj[v][j];
    return d;
  }
  McKayGraph remove_vertex(int v) const {
    McKayGraph g;
    g.n = n - 1;
    std::vector<int> map;
    for (int i = 0; i < n; ++i)
      if (i != v) map.push_back(i);
    for (int i = 0; i < g.n; ++i) g.dims.push_back(dims[map[i]]);
    g.adj.assign(g.n, std::vector<int>(g.n, 0));
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) g.adj[i][j] = adj[map[i]][map[j]];
    g.trivial_index = -1;
    g.rho_index = -1;
    for (int i = 0; i < g.n; ++i) {
      if (map[i] == trivial_index) g.trivial_index = i;
      if (map[i] == rho_index) g.rho_index = i;
    }
    return g;
  }
};

// a_{ij} = <chi_i, chi_rho * chi_j>
inline McKayGraph mckay_graph(const CharacterTable& tab) {
  McKayGraph g;
  g.n = tab.num_irreducibles();
  g.dims = tab.dims;
  g.trivial_index = tab.trivial_index;
  g.rho_index = tab.rho_index;
  g.adj.assign(g.n, std::vector<int>(g.n, 0));
  int nc = (int)tab.classes.rep.size();
  for (int j = 0; j < g.n; ++j) {
    std::vector<FieldElement> prod(nc);
    for (int c = 0; c < nc; ++c) prod[c] = tab.chars[tab.rho_index][c] * tab.chars[j][c];
    for (int i = 0; i < g.n; ++i) g.adj[i][j] = (int)tab.multiplicity(prod, i);
  }
  return g;
}

// mu_n: vertices are the n weight characters; rho = weight(+1) + weight(-1)
// links w to w+-1 mod n
inline McKayGraph mckay_graph_mu(long n) {
  McKayGraph g;
  g.n = (int)n;
  g.dims.assign(g.n, 1);
  g.adj.assign(g.n, std::vector<int>(g.n, 0));
  g.trivial_index = 0;
  g.rho_index = -1;
  if (n == 1) {
    g.adj[0][0] = 2;
    return g;
  }
  for (int w = 0; w < g.n; ++w) {
    g.adj[w][(w + 1) % n]++;
    g.adj[w][(w - 1 + n) % n]++;
  }
  return g;
}

enum class DynkinFamily : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct DynkinLabel {
  DynkinFamily family;
  int rank = 0;
  bool affine = false;
  bool operator==(const DynkinLabel& o) const {
    return family == o.family && rank == o.rank && affine == o.affine;
  }
  std::string str() const {
    std::string s(1, (char)family);
    s += std::to_string(rank);
    if (affine) s += "~";
    return s;
  }
};

inline int beta_of(int n) { return n % 2 == 0 ? n / 2 : (n - 1) / 2; }

namespace detail_mckay {
// arm lengths from a branch vertex (paths to leaves avoiding the branch)
inline std::vector<int> arm_lengths(const McKayGraph& g, int branch) {
  std::vector<int> arms;
  for (int s = 0; s < g.n; ++s) {
    if (!g.adj[branch][s]) continue;
    int len = 1, prev = branch, cur = s;
    while (true) {
      int next = -1;
      for (int t = 0; t < g.n; ++t)
        if (g.adj[cur][t] && t != prev) { next = t; break; }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  return arms;
}
}  // namespace detail_mckay

// Recognize affine (as computed) or finite (after removing the trivial
// vertex) ADE shapes.
inline DynkinLabel classify_dynkin(const McKayGraph& graph, bool remove_trivial) {
  McKayGraph g = remove_trivial ? graph.remove_vertex(graph.trivial_index) : graph;
  bool affine = !remove_trivial;
  if (g.n == 0) throw NotADEShape("empty graph");
  // connectivity
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < g.n; ++w)
      if (g.adj[v][w] && !seen[w]) { seen[w] = 1; ++cnt; stack.push_back(w); }
  }
  if (cnt != g.n) throw NotADEShape("graph not connected");
  // special case: affine A_1 on two vertices with a double edge
  if (affine && g.n == 2 && g.adj[0][1] == 2) return {DynkinFamily::A, 1, true};
  for (int i = 0; i < g.n; ++i) {
    if (g.adj[i][i]) throw NotADEShape("loop");
    for (int j = 0; j < g.n; ++j)
      if (g.adj[i][j] > 1) throw NotADEShape("multiple edge");
  }
  long edges = 0;
  std::vector<int> branch;
  int maxdeg = 0;
  for (int i = 0; i < g.n; ++i) {
    int d = g.degree(i);
    maxdeg = std::max(maxdeg, d);
    if (d >= 3) branch.push_back(i);
    edges += d;
  }
  edges /= 2;
  bool has_cycle = edges >= g.n;
  if (affine) {
    if (has_cycle) {
      if (maxdeg != 2) throw NotADEShape("cycle with a branch");
      return {DynkinFamily::A, g.n - 1, true};
    }
    if (branch.size() == 1 && g.degree(branch[0]) == 4 && g.n == 5) return {DynkinFamily::D, 4, true};
    if (branch.size() == 2) {
      for (int b : branch) {
        if (g.degree(b) != 3) throw NotADEShape("bad branch degree");
        int leaves = 0;
        for (int w = 0; w < g.n; ++w)
          if (g.adj[b][w] && g.degree(w) == 1) ++leaves;
        if (leaves != 2) throw NotADEShape("affine D fork malformed");
      }
      return {DynkinFamily::D, g.n - 1, true};
    }
    if (branch.size() == 1 && g.degree(branch[0]) == 3) {
      auto arms = detail_mckay::arm_lengths(g, branch[0]);
      if (arms == std::vector<int>{2, 2, 2}) return {DynkinFamily::E, 6, true};
      if (arms == std::vector<int>{1, 3, 3}) return {DynkinFamily::E, 7, true};
      if (arms == std::vector<int>{1, 2, 5}) return {DynkinFamily::E, 8, true};
      throw NotADEShape("unrecognized affine arms");
    }
    throw NotADEShape("unrecognized affine shape");
  }
  if (has_cycle) throw NotADEShape("finite diagram with a cycle");
  if (branch.empty()) return {DynkinFamily::A, g.n, false};
  if (branch.size() != 1 || g.degree(branch[0]) != 3) throw NotADEShape("unrecognized finite shape");
  auto arms = detail_mckay::arm_lengths(g, branch[0]);
  if (arms[0] == 1 && arms[1] == 1) return {DynkinFamily::D, g.n, false};
  if (arms == std::vector<int>{1, 2, 2}) return {DynkinFamily::E, 6, false};
  if (arms == std::vector<int>{1, 2, 3}) return {DynkinFamily::E, 7, false};
  if (arms == std::vector<int>{1, 2, 4}) return {DynkinFamily::E, 8, false};
  throw NotADEShape("unrecognized finite arms");
}

// permutation group on graph vertices
struct PermGroup {
  std::vector<std::vector<int>> elems;  // sorted, identity first
  std::vector<std::vector<int>> mul;    // composition table: (i,j) -> elems[i] after elems[j]
  int size() const { return (int)elems.size(); }
  int find(const std::vector<int>& p) const {
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == p) return (int)i;
    return -1;
  }
  static std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
    return r;
  }
  void build_table() {
    int n = size();
    mul.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mul[i][j] = find(compose(elems[i], elems[j]));
        if (mul[i][j] < 0) throw std::runtime_error("permutation set not closed");
      }
  }
};

// all vertex permutations preserving adjacency and dimension labels
inline PermGroup graph_automorphisms(const McKayGraph& g) {
  PermGroup pg;
  std::vector<int> perm(g.n, -1);
  std::vector<char> used(g.n, 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == g.n) {
      pg.elems.push_back(perm);
      return;
    }
    for (int w = 0; w < g.n; ++w) {
      if (used[w] || g.dims[w] != g.dims[v]) continue;
      bool ok = g.adj[v][v] == g.adj[w][w];
      for (int u = 0; u < v && ok; ++u)
        if (g.adj[v][u] != g.adj[w][perm[u]]) ok = false;
      if (!ok) continue;
      perm[v] = w;
      used[w] = 1;
      rec(v + 1);
      used[w] = 0;
      perm[v] = -1;
    }
  };
  rec(0);
  std::sort(pg.elems.begin(), pg.elems.end());
  // identity first
  std::vector<int> id(g.n);
  for (int i = 0; i < g.n; ++i) id[i] = i;
  auto it = std::find(pg.elems.begin(), pg.elems.end(), id);
  std::rotate(pg.elems.begin(), it, it + 1);
  std::sort(pg.elems.begin() + 1, pg.elems.end());
  pg.build_table();
  return pg;
}

// The N(G)/G action on the finite McKay graph Gamma(G, rho): for each coset
// of G in N, the permutation of irreducibles induced by chi -> chi(g^-1 . g).
// Verifies kernel = G, image = Aut(Gamma), and the homomorphism property
// (multiplication tables agree).
struct NormalizerGraphAction {
  PermGroup image;                       // subgroup of Aut(Gamma) reached
  PermGroup aut;                         // full Aut(Gamma)
  std::vector<std::vector<int>> cosets;  // element indices of N per coset
  bool bijective = false;
};

inline NormalizerGraphAction normalizer_action_on_graph(const EtaleGroupModel& N, const EtaleGroupModel& G,
                                                        const CharacterTable& tab) {
  auto sub_idx = N.subgroup_indices(G);
  std::set<int> gset(sub_idx.begin(), sub_idx.end());
  // normality
  for (int n = 0; n < N.order(); ++n)
    for (int s : sub_idx)
      if (!gset.count(N.mul(N.mul(n, s), N.inverse(n)))) throw NotASubgroup("G not normal in N");
  // coset decomposition
  std::vector<int> coset_of(N.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int i = 0; i < N.order(); ++i) {
    if (coset_of[i] >= 0) continue;
    int id = (int)cosets.size();
    cosets.push_back({});
    for (int s : sub_idx) {
      int e = N.mul(i, s);
      coset_of[e] = id;
      cosets[id].push_back(e);
    }
  }
  // graph and its automorphisms (trivial vertex removed)
  auto graph = mckay_graph(tab);
  auto fin = graph.remove_vertex(graph.trivial_index);
  auto aut = graph_automorphisms(fin);
  // vertex map: irreducible index -> finite-graph vertex (skip trivial)
  std::vector<int> vtx(tab.num_irreducibles(), -1);
  {
    int k = 0;
    for (int i = 0; i < tab.num_irreducibles(); ++i)
      if (i != tab.trivial_index) vtx[i] = k++;
  }
  int nc = (int)tab.classes.rep.size();
  auto char_perm = [&](int g_in_N) -> std::vector<int> {
    int gi = N.inverse(g_in_N);
    std::vector<int> p(tab.num_irreducibles(), -1);
    for (int i = 0; i < tab.num_irreducibles(); ++i) {
      std::vector<FieldElement> v(nc);
      for (int c = 0; c < nc; ++c) {
        // representative of class c inside N, conjugated
        int repG = tab.classes.rep[c];
        int repN = N.find(G.elements()[repG]);
        int conj = N.mul(N.mul(gi, repN), g_in_N);
        int backG = G.find(N.elements()[conj]);
        v[c] = tab.chars[i][tab.classes.class_of[backG]];
      }
      for (int j = 0; j < tab.num_irreducibles(); ++j)
        if (tab.chars[j] == v) { p[i] = j; break; }
      if (p[i] < 0) throw NotSurjective("conjugated character is not in the table");
    }
    return p;
  };
  NormalizerGraphAction out;
  out.aut = aut;
  out.cosets = cosets;
  std::vector<std::vector<int>> image_perms;
  std::vector<int> coset_to_img;
  for (auto& coset : cosets) {
    auto p = char_perm(coset[0]);
    if (p[tab.trivial_index] != tab.trivial_index) throw NotSurjective("trivial character moved");
    std::vector<int> fp(fin.n, -1);
    for (int i = 0; i < tab.num_irreducibles(); ++i)
      if (i != tab.trivial_index) fp[vtx[i]] = vtx[p[i]];
    if (aut.find(fp) < 0) throw NotSurjective("induced permutation is not a graph automorphism");
    // kernel check: identity permutation only for the G-coset
    bool isid = true;
    for (int i = 0; i < fin.n; ++i)
      if (fp[i] != i) isid = false;
    bool isGcoset = gset.count(coset[0]) > 0;
    if (isid != isGcoset) throw KernelMismatch("kernel of the graph action is not G");
    image_perms.push_back(fp);
  }
  // injectivity on cosets and homomorphism property
  for (size_t a = 0; a < cosets.size(); ++a)
    for (size_t b = 0; b < cosets.size(); ++b) {
      if (a != b && image_perms[a] == image_perms[b]) throw KernelMismatch("graph action not injective on N/G");
      int prod = N.mul(cosets[a][0], cosets[b][0]);
      // left action: pi_{ab} = pi_a after pi_b
      auto pa = image_perms[a], pb = image_perms[b];
      auto pab = PermGroup::compose(pa, pb);
      // locate the coset of prod
      int cp = coset_of[prod];
      if (!(image_perms[cp] == pab)) throw NotSurjective("graph action is not a homomorphism");
    }
  out.image.elems = image_perms;
  std::sort(out.image.elems.begin(), out.image.elems.end());
  std::vector<int> id(fin.n);
  for (int i = 0; i < fin.n; ++i) id[i] = i;
  auto it = std::find(out.image.elems.begin(), out.image.elems.end(), id);
  std::rotate(out.image.elems.begin(), it, it + 1);
  std::sort(out.image.elems.begin() + 1, out.image.elems.end());
  out.image.build_table();
  // surjectivity onto Aut(Gamma)
  out.bijective = out.image.size() == aut.size();
  if (!out.bijective) throw NotSurjective("graph action does not reach all of Aut(Gamma)");
  // multiplication tables agree under the identification of sorted elements
  for (int i = 0; i < out.image.size(); ++i)
    if (aut.find(out.image.elems[i]) < 0) throw NotSurjective("image not contained in Aut(Gamma)");
  return out;
}

// Thm-table folding lookup.
inline DynkinLabel fold(const DynkinLabel& label, int subgroup_order) {
  if (label.affine) throw UnsupportedFold("fold expects a finite label");
  if (subgroup_order == 1) return label;
  if (label.family == DynkinFamily::A && subgroup_order == 2) {
    int n = label.rank + 1;
    return {DynkinFamily::B, beta_of(n), false};
  }
  if (label.family == DynkinFamily::D && label.rank == 4) {
    if (subgroup_order == 2) return {DynkinFamily::C, 3, false};
    if (subgroup_order == 3 || subgroup_order == 6) return {DynkinFamily::G, 2, false};
  }
  if (label.family == DynkinFamily::D && label.rank >= 5 && subgroup_order == 2)
    return {DynkinFamily::C, label.rank - 1, false};
  if (label.family == DynkinFamily::E && label.rank == 6 && subgroup_order == 2)
    return {DynkinFamily::F, 4, false};
  throw UnsupportedFold(label.str() + " by subgroup of order " + std::to_string(subgroup_order));
}

// DOT output: vertex label dim@index, trivial vertex double-circled, rho boxed
inline std::string graph_dot(const McKayGraph& g) {
  std::ostringstream os;
  os << "graph mckay {\n";
  for (int i = 0; i < g.n; ++i) {
    os << "  v" << i << " [label=\"" << g.dims[i] << "@" << i << "\"";
    if (i == g.trivial_index) os << ", shape=doublecircle";
    else if (i == g.rho_index) os << ", shape=box";
    else os << ", shape=circle";
    os << "];\n";
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j) {
      int m = i == j ? g.adj[i][j] / 2 : g.adj[i][j];
      for (int k = 0; k < m; ++k) os << "  v" << i << " -- v" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace rdp
