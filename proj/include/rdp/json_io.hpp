// JSON serialization: towers and elements (exact nested coefficient strings),
// polynomials, group models, graphs, and singularity equations.
#pragma once

#include <json.hpp>

#include "twistcatalog.hpp"

namespace rdp {

using Json = nlohmann::ordered_json;

inline Json fval_to_json(const FieldTower& t, int lvl, const FVal& v) {
  if (lvl == 0) return v.q.get_str();
  Json arr = Json::array();
  for (auto& k : v.kids) arr.push_back(fval_to_json(t, lvl - 1, k));
  return arr;
}

inline FVal fval_from_json(const FieldTower& t, int lvl, const Json& j) {
  if (lvl == 0) {
    Rat q(j.get<std::string>());
    q.canonicalize();
    return t.from_rat(0, q);
  }
  FVal v;
  if (!j.is_array() || (int)j.size() != t.level(lvl - 1).degree)
    throw std::runtime_error("element json has wrong shape");
  for (auto& k : j) v.kids.push_back(fval_from_json(t, lvl - 1, k));
  return v;
}

inline Json tower_to_json(const TowerPtr& t) {
  Json j;
  j["base"] = t->characteristic() == 0 ? "Q" : "Fp";
  if (t->characteristic() != 0) j["p"] = t->characteristic();
  Json levels = Json::array();
  for (int i = 0; i < t->num_levels(); ++i) {
    Json lv;
    lv["name"] = t->level(i).name;
    Json mp = Json::array();
    for (auto& c : t->level(i).minpoly) mp.push_back(fval_to_json(*t, i, c));
    lv["minpoly"] = mp;
    levels.push_back(lv);
  }
  j["levels"] = levels;
  return j;
}

inline TowerPtr tower_from_json(const Json& j) {
  TowerPtr t = j.at("base").get<std::string>() == "Q" ? FieldTower::rationals()
                                                      : FieldTower::prime_field(j.at("p").get<long>());
  for (auto& lv : j.at("levels")) {
    std::vector<FVal> coeffs;
    int L = t->num_levels();
    for (auto& c : lv.at("minpoly")) coeffs.push_back(fval_from_json(*t, L, c));
    coeffs.push_back(t->one(L));
    t = t->adjoin(lv.at("name").get<std::string>(), coeffs, LevelKind::Other, /*precertified=*/true);
  }
  return t;
}

inline Json element_to_json(const FieldElement& e) {
  Json j;
  j["coeffs"] = fval_to_json(*e.tower(), e.tower()->num_levels(), e.val());
  return j;
}

inline FieldElement element_from_json(const TowerPtr& t, const Json& j) {
  return {t, fval_from_json(*t, t->num_levels(), j.at("coeffs"))};
}

inline Json bipoly_to_json(const BivariatePoly& f) {
  Json terms = Json::array();
  for (auto& [e, c] : f.terms()) {
    Json t;
    t["exp"] = {e[0], e[1]};
    t["coeff"] = fval_to_json(*f.tower(), f.tower()->num_levels(), c.val());
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

inline Json trivpoly_to_json(const TrivariatePoly& f) {
  Json terms = Json::array();
  for (auto& [e, c] : f.terms()) {
    Json t;
    t["exp"] = {e[0], e[1], e[2]};
    t["coeff"] = fval_to_json(*f.tower(), f.tower()->num_levels(), c.val());
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

inline Json model_to_json(const EtaleGroupModel& m, const TwistDatum* datum = nullptr) {
  Json j;
  j["name"] = m.name();
  j["order"] = m.order();
  j["tower"] = tower_to_json(m.tower());
  Json elems = Json::array();
  for (auto& g : m.elements())
    elems.push_back(Json::array({Json::array({g.a.str(), g.b.str()}), Json::array({g.c.str(), g.d.str()})}));
  j["elements"] = elems;
  j["mul_table"] = m.mul_table();
  if (datum) {
    Json tw;
    Json cocycles = Json::array();
    for (size_t k = 0; k < datum->cocycle.size(); ++k) {
      const Mat2& c = datum->cocycle[k];
      Json e;
      e["galois_generator"] = datum->galois[datum->generator_idx[k]].str();
      e["matrix"] = Json::array({Json::array({c.a.str(), c.b.str()}), Json::array({c.c.str(), c.d.str()})});
      cocycles.push_back(e);
    }
    tw["generators"] = cocycles;
    j["twist"] = tw;
  }
  return j;
}

inline Json graph_to_json(const McKayGraph& g) {
  Json j;
  Json vs = Json::array();
  for (int i = 0; i < g.n; ++i) {
    Json v;
    v["index"] = i;
    v["dim"] = g.dims[i];
    vs.push_back(v);
  }
  j["vertices"] = vs;
  j["adjacency"] = g.adj;
  j["trivial"] = g.trivial_index;
  j["rho"] = g.rho_index;
  return j;
}

inline Json equation_to_json(const SingularityEquation& eq) {
  Json j;
  j["label"] = eq.label.str();
  j["rank"] = eq.label.rank;
  j["equation"] = eq.equation.str();
  Json params;
  for (auto& [k, v] : eq.params) params[k] = v;
  j["params"] = params;
  j["splitting_field"] = eq.splitting_field;
  j["char_constraints"] = eq.char_constraints;
  Json tr;
  for (auto& [k, v] : eq.transcript) tr[k] = v;
  j["transcript"] = tr;
  return j;
}

}  // namespace rdp
