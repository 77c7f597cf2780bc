#include "qdtk/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace qdtk {
namespace {

using nlohmann::json;

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw std::runtime_error(
      "rationals must be strings (\"p/q\") or integers, got: " + j.dump());
}

Vec vec_from_json(const json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const Rat& x : v) out.push_back(to_string(x));
  return out;
}

json polytope_to_json(const Polytope& P) {
  json out = json::array();
  for (const Vec& p : P.vertices) out.push_back(vec_to_json(p));
  return out;
}

json qd_to_json(const Quasidifferential& q) {
  return json{{"sub", polytope_to_json(q.sub)},
              {"sup", polytope_to_json(q.sup)}};
}

json certificate_to_json(const Certificate& c) {
  json lam = json::array(), mu_u = json::array(), mu_o = json::array();
  for (const Rat& x : c.lambda) lam.push_back(to_string(x));
  for (const Rat& x : c.mu_under) mu_u.push_back(to_string(x));
  for (const Rat& x : c.mu_over) mu_o.push_back(to_string(x));
  auto nested = [](const std::vector<std::vector<Rat>>& vv) {
    json out = json::array();
    for (const auto& v : vv) {
      json row = json::array();
      for (const Rat& x : v) row.push_back(to_string(x));
      out.push_back(row);
    }
    return out;
  };
  json obj = json::array();
  for (const Rat& x : c.combo.objective) obj.push_back(to_string(x));
  return json{{"lambda", lam},
              {"mu_under", mu_u},
              {"mu_over", mu_o},
              {"combo",
               {{"objective", obj},
                {"inequalities", nested(c.combo.ineq)},
                {"equality_piece_a", nested(c.combo.eq_piece_a)},
                {"equality_piece_b", nested(c.combo.eq_piece_b)}}}};
}

}  // namespace

Problem problem_from_json(const json& j) {
  Problem p;
  p.n = j.at("dim").get<int>();
  p.anchor = vec_from_json(j.at("anchor"));
  p.objective = parse_expr(j.at("objective").get<std::string>());
  if (j.contains("equalities"))
    for (const auto& s : j.at("equalities"))
      p.equalities.push_back(parse_expr(s.get<std::string>()));
  if (j.contains("inequalities"))
    for (const auto& s : j.at("inequalities"))
      p.inequalities.push_back(parse_expr(s.get<std::string>()));
  if (j.contains("set_A") && !j.at("set_A").is_null()) {
    PolyhedralSet A;
    for (const auto& row : j.at("set_A")) {
      LpRow r;
      r.a = vec_from_json(row.at("coeffs"));
      r.b = rat_from_json(row.at("rhs"));
      A.rows.push_back(std::move(r));
    }
    p.set_A = std::move(A);
  }
  if (j.contains("flags")) {
    const auto& f = j.at("flags");
    p.flags.uniform_dd = f.value("uniform_dd", false);
    p.flags.hadamard_dd = f.value("hadamard_dd", false);
    p.flags.continuous_near_anchor = f.value("continuous_near_anchor", false);
  }
  return p;
}

json problem_to_json(const Problem& p) {
  json j{{"schema", 1},
         {"dim", p.n},
         {"anchor", vec_to_json(p.anchor)},
         {"objective", to_string(p.objective)}};
  json eqs = json::array(), ineqs = json::array();
  for (const ExprPtr& e : p.equalities) eqs.push_back(to_string(e));
  for (const ExprPtr& e : p.inequalities) ineqs.push_back(to_string(e));
  j["equalities"] = eqs;
  j["inequalities"] = ineqs;
  if (p.set_A) {
    json rows = json::array();
    for (const LpRow& r : p.set_A->rows)
      rows.push_back(
          json{{"coeffs", vec_to_json(r.a)}, {"rhs", to_string(r.b)}});
    j["set_A"] = rows;
  }
  j["flags"] = json{{"uniform_dd", p.flags.uniform_dd},
                    {"hadamard_dd", p.flags.hadamard_dd},
                    {"continuous_near_anchor", p.flags.continuous_near_anchor}};
  return j;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  json j;
  in >> j;
  return problem_from_json(j);
}

json report_to_json(const AnalysisReport& rep) {
  json j{{"schema", 1}};
  j["objective_qd"] = qd_to_json(rep.data.objective_qd);
  json eq_qds = json::array(), in_qds = json::array();
  for (const auto& q : rep.data.equality_qds) eq_qds.push_back(qd_to_json(q));
  for (const auto& q : rep.data.inequality_qds)
    in_qds.push_back(qd_to_json(q));
  j["equality_qds"] = eq_qds;
  j["inequality_qds"] = in_qds;
  json act = json::array();
  for (int a : rep.data.active) act.push_back(a + 1);
  j["active_inequalities"] = act;

  switch (rep.search_status) {
    case SearchStatus::Found:
      j["selection_search"] = "found";
      break;
    case SearchStatus::ExhaustedComplete:
      j["selection_search"] = "exhausted-complete-over-vertices";
      break;
    case SearchStatus::ExhaustedBudget:
      j["selection_search"] = "exhausted-budget";
      break;
  }
  j["selections_examined"] = rep.examined;

  if (rep.search_status == SearchStatus::Found) {
    json xs = json::array(), ys = json::array(), zs = json::array();
    for (const Vec& v : rep.sel.x_star) xs.push_back(vec_to_json(v));
    for (const Vec& v : rep.sel.y_star) ys.push_back(vec_to_json(v));
    for (const Vec& v : rep.sel.z_star) zs.push_back(vec_to_json(v));
    j["selection"] = json{{"x_star", xs}, {"y_star", ys}, {"z_star", zs}};
    if (!rep.used_set_A) {
      json vl = json::array(), wl = json::array();
      for (const Witness& w : rep.witness.v_list)
        vl.push_back(json{{"v", vec_to_json(w.v)},
                          {"margin", to_string(w.margin)}});
      for (const Witness& w : rep.witness.w_list)
        wl.push_back(json{{"v", vec_to_json(w.v)},
                          {"margin", to_string(w.margin)}});
      j["witness"] = json{{"v_list", vl},
                          {"w_list", wl},
                          {"v0", vec_to_json(rep.witness.v0.v)},
                          {"v0_margin", to_string(rep.witness.v0.margin)}};
    }
    json rows = json::array();
    for (const ConeRow& r : rep.cone.rows) {
      const char* src = r.source == ConeRow::Source::EqualitySub
                            ? "equality-sub"
                            : r.source == ConeRow::Source::EqualitySup
                                  ? "equality-sup"
                                  : "inequality";
      rows.push_back(json{{"normal", vec_to_json(r.a)},
                          {"source", src},
                          {"index", r.index + 1}});
    }
    j["cone_k_rows"] = rows;
    json yv = json::array();
    for (const YVertexVerdict& v : rep.y_verdicts) {
      json e{{"y0", vec_to_json(v.y0)},
             {"certified", v.certified}};
      if (v.certified) e["certificate"] = certificate_to_json(v.cert);
      yv.push_back(std::move(e));
    }
    j["y0_verdicts"] = yv;
  }

  j["qd_mfcq"] = json{{"strong_linear_independence", rep.mfcq.strong_li},
                      {"inequality_disjointness", rep.mfcq.ineq_disjoint},
                      {"v0_exists", rep.mfcq.v0_exists},
                      {"holds", rep.mfcq.ok}};
  json gp = json::array();
  for (const auto& z : rep.general_position)
    gp.push_back(z ? json{{"found", true}, {"z_star", vec_to_json(*z)}}
                   : json{{"found", false}});
  j["general_position"] = gp;

  if (rep.used_set_A) {
    json ng = json::array();
    for (const Vec& g : rep.normal_generators) ng.push_back(vec_to_json(g));
    j["normal_cone_generators"] = ng;
  }

  switch (rep.classification) {
    case Classification::KKTConsistent:
      j["classification"] = "KKT-consistent";
      break;
    case Classification::NonOptimal:
      j["classification"] = "NonOptimal";
      j["y0_witness"] = vec_to_json(rep.y0_witness);
      break;
    case Classification::CQNotEstablished:
      j["classification"] = "CQ-not-established";
      break;
  }

  if (rep.sampled) {
    json o{{"improvement_found", rep.improvement.found}};
    if (rep.improvement.found) {
      o["point"] = vec_to_json(rep.improvement.point);
      o["exact"] = rep.improvement.exact;
      if (rep.improvement.exact) o["value"] = to_string(rep.improvement.value);
      o["approx_value"] = rep.improvement.approx_value;
    }
    j["oracle"] = o;
  }
  return j;
}

}  // namespace qdtk
