// qdcheck: exact quasidifferential analysis of nonsmooth programs.
//
// Subcommands:
//   eval  FILE [--dir v]       quasidifferentials and directional derivatives
//   cq    FILE [--selection S] constraint-qualification report
//   kkt   FILE                 full stationarity analysis
//   cone  FILE [--all-selections] [--sample N]  cone description
//
// Exit codes: 0 analysis completed (any verdict), 2 invalid input,
// 3 search budget exhausted.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>

#include "qdtk/io.hpp"

using namespace qdtk;
using nlohmann::json;

namespace {

std::string fmt_vec(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

std::string fmt_poly(const Polytope& P) {
  std::string s = "co{ ";
  for (size_t i = 0; i < P.vertices.size(); ++i) {
    if (i) s += ", ";
    s += fmt_vec(P.vertices[i]);
  }
  return s + " }";
}

Vec parse_vec_arg(const std::string& s, int n) {
  Vec v;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      v.push_back(parse_rat(cur));
      cur.clear();
    }
  };
  for (char c : s) {
    if (c == ',' || c == ' ')
      flush();
    else if (c != '(' && c != ')')
      cur += c;
  }
  flush();
  if (static_cast<int>(v.size()) != n)
    throw std::runtime_error("direction must have " + std::to_string(n) +
                             " coordinates");
  return v;
}

Selection parse_selection_arg(const std::string& s) {
  json j;
  if (!s.empty() && s.front() == '{') {
    j = json::parse(s);
  } else {
    std::ifstream in(s);
    if (!in) throw std::runtime_error("cannot open selection file: " + s);
    in >> j;
  }
  Selection sel;
  auto read = [&](const char* key, std::vector<Vec>& out) {
    if (!j.contains(key)) return;
    for (const auto& arr : j.at(key)) {
      Vec v;
      for (const auto& x : arr)
        v.push_back(x.is_string() ? parse_rat(x.get<std::string>())
                                  : Rat(x.get<long>()));
      out.push_back(std::move(v));
    }
  };
  read("x_star", sel.x_star);
  read("y_star", sel.y_star);
  read("z_star", sel.z_star);
  return sel;
}

int require_valid(const Problem& p) {
  std::vector<std::string> bad = validate(p);
  if (bad.empty()) return 0;
  for (const std::string& v : bad) std::cerr << "invalid input: " << v << "\n";
  return 2;
}

void print_qds(const ProgramData& d) {
  std::cout << "objective: sub = " << fmt_poly(d.objective_qd.sub)
            << ", sup = " << fmt_poly(d.objective_qd.sup) << "\n";
  for (size_t i = 0; i < d.equality_qds.size(); ++i)
    std::cout << "equality " << i + 1
              << ": sub = " << fmt_poly(d.equality_qds[i].sub)
              << ", sup = " << fmt_poly(d.equality_qds[i].sup) << "\n";
  for (size_t j = 0; j < d.inequality_qds.size(); ++j)
    std::cout << "inequality " << d.active[j] + 1 << " (active)"
              << ": sub = " << fmt_poly(d.inequality_qds[j].sub)
              << ", sup = " << fmt_poly(d.inequality_qds[j].sup) << "\n";
}

void print_cone(const ConeK& K) {
  if (K.rows.empty()) {
    std::cout << "K = R^" << K.dim << " (no rows)\n";
    return;
  }
  for (const ConeRow& r : K.rows) {
    const char* src = r.source == ConeRow::Source::EqualitySub
                          ? "equality-sub"
                          : r.source == ConeRow::Source::EqualitySup
                                ? "equality-sup"
                                : "inequality";
    std::cout << "  <" << fmt_vec(r.a) << ", v> <= 0   [" << src << " "
              << r.index + 1 << "]\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quasidifferential analysis toolkit"};
  app.require_subcommand(1);

  std::string file, dir_arg, sel_arg, json_out;
  bool lenient = false, all_selections = false;
  unsigned long long budget = 1000000, seed = 20240817;
  int sample_n = 0;

  auto add_common = [&](CLI::App* c) {
    c->add_option("file", file, "problem file (JSON)")->required();
    c->add_flag("--lenient", lenient,
                "tolerate inexact activity decisions (marked in output)");
    c->add_option("--budget,-B", budget, "selection search budget");
    c->add_option("--seed,-S", seed, "sampling seed");
    c->add_option("--json-out", json_out, "write structured report here");
  };

  CLI::App* c_eval = app.add_subcommand("eval", "quasidifferentials");
  add_common(c_eval);
  c_eval->add_option("--dir", dir_arg, "direction for f'(anchor, v)");

  CLI::App* c_cq = app.add_subcommand("cq", "constraint qualification");
  add_common(c_cq);
  c_cq->add_option("--selection", sel_arg,
                   "explicit selection as JSON {x_star,y_star,z_star}");

  CLI::App* c_kkt = app.add_subcommand("kkt", "stationarity analysis");
  add_common(c_kkt);
  c_kkt->add_option("--sample", sample_n, "run sampling validation");

  CLI::App* c_cone = app.add_subcommand("cone", "cone description");
  add_common(c_cone);
  c_cone->add_flag("--all-selections", all_selections,
                   "print the cone of every qualifying vertex selection");
  c_cone->add_option("--sample", sample_n,
                     "sampled contingent validation rays");

  CLI11_PARSE(app, argc, argv);

  try {
    Problem p = load_problem(file);
    if (int rc = require_valid(p)) return rc;
    DiffOptions dopt;
    dopt.lenient = lenient;
    ProgramData d = differentiate(p, dopt);

    if (c_eval->parsed()) {
      print_qds(d);
      if (!dir_arg.empty()) {
        Vec v = parse_vec_arg(dir_arg, p.n);
        std::cout << "f0'(anchor, " << fmt_vec(v)
                  << ") = " << to_string(dir_deriv(d.objective_qd, v)) << "\n";
        for (size_t i = 0; i < d.equality_qds.size(); ++i)
          std::cout << "f" << i + 1 << "' = "
                    << to_string(dir_deriv(d.equality_qds[i], v)) << "\n";
        for (size_t j = 0; j < d.inequality_qds.size(); ++j)
          std::cout << "g" << d.active[j] + 1 << "' = "
                    << to_string(dir_deriv(d.inequality_qds[j], v)) << "\n";
      }
      return 0;
    }

    if (c_cq->parsed()) {
      MfcqReport mf = check_qd_mfcq(d);
      std::cout << "q.d.-MFCQ: " << (mf.ok ? "holds" : "fails")
                << " (strong linear independence "
                << (mf.strong_li ? "yes" : "no") << ", inequality part "
                << (mf.ineq_disjoint ? "yes" : "no") << ")\n";
      for (size_t j = 0; j < d.inequality_qds.size(); ++j) {
        auto z = general_position_cq(d.inequality_qds[j]);
        std::cout << "inequality " << d.active[j] + 1 << ": qualifying z* ";
        std::cout << (z ? fmt_vec(*z) : std::string("none")) << "\n";
      }
      if (!sel_arg.empty()) {
        Selection sel = parse_selection_arg(sel_arg);
        if (!selection_valid(d, sel)) {
          std::cerr << "invalid input: selection points are not members of "
                       "their stated sets\n";
          return 2;
        }
        if (auto w = check_cq(d, sel)) {
          std::cout << "selection qualifies; v0 = " << fmt_vec(w->v0.v)
                    << " margin " << to_string(w->v0.margin) << "\n";
        } else {
          std::cout << "selection does not qualify\n";
        }
        std::cout << "geometric form: "
                  << (check_geometric(d, sel) ? "disjoint" : "intersecting")
                  << "\n";
        return 0;
      }
      SearchResult sr = search_selection(d, budget);
      if (sr.status == SearchStatus::Found) {
        std::cout << "qualifying selection found after " << sr.examined
                  << " candidates\n";
        for (size_t i = 0; i < sr.sel.x_star.size(); ++i)
          std::cout << "  x*_" << i + 1 << " = " << fmt_vec(sr.sel.x_star[i])
                    << ", y*_" << i + 1 << " = " << fmt_vec(sr.sel.y_star[i])
                    << "\n";
        for (size_t j = 0; j < sr.sel.z_star.size(); ++j)
          std::cout << "  z*_" << d.active[j] + 1 << " = "
                    << fmt_vec(sr.sel.z_star[j]) << "\n";
        std::cout << "  v0 = " << fmt_vec(sr.witness.v0.v) << " margin "
                  << to_string(sr.witness.v0.margin) << "\n";
        return 0;
      }
      std::cout << (sr.status == SearchStatus::ExhaustedBudget
                        ? "search budget exhausted\n"
                        : "no qualifying vertex selection exists "
                          "(complete scan)\n");
      return sr.status == SearchStatus::ExhaustedBudget ? 3 : 0;
    }

    if (c_kkt->parsed()) {
      AnalysisOptions opt;
      opt.budget = budget;
      opt.diff = dopt;
      opt.run_sampling = sample_n > 0;
      opt.sampling.seed = seed;
      if (sample_n > 0) opt.sampling.samples = sample_n;
      AnalysisReport rep = analyze(p, opt);
      print_qds(rep.data);
      switch (rep.classification) {
        case Classification::KKTConsistent:
          std::cout << "KKT-CONSISTENT (over superdifferential vertices)\n";
          break;
        case Classification::NonOptimal:
          std::cout << "NONOPTIMAL: stationarity fails for y0* = "
                    << fmt_vec(rep.y0_witness) << "\n";
          break;
        case Classification::CQNotEstablished:
          std::cout << "CQ-NOT-ESTABLISHED: no qualifying selection\n";
          break;
      }
      if (rep.sampled && rep.improvement.found) {
        std::cout << "oracle: better feasible point "
                  << fmt_vec(rep.improvement.point);
        if (rep.improvement.exact)
          std::cout << " value " << to_string(rep.improvement.value);
        std::cout << "\n";
      }
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << report_to_json(rep).dump(2) << "\n";
      }
      if (rep.search_status == SearchStatus::ExhaustedBudget) return 3;
      return 0;
    }

    if (c_cone->parsed()) {
      if (all_selections) {
        // Enumerate every qualifying vertex selection and its cone.
        std::vector<const std::vector<Vec>*> slots;
        for (const auto& q : d.equality_qds) slots.push_back(&q.sub.vertices);
        for (const auto& q : d.equality_qds) slots.push_back(&q.sup.vertices);
        for (const auto& q : d.inequality_qds)
          slots.push_back(&q.sup.vertices);
        std::vector<size_t> idx(slots.size(), 0);
        const size_t m = d.equality_qds.size();
        unsigned long long count = 0;
        int printed = 0;
        for (;;) {
          if (++count > budget) {
            std::cerr << "search budget exhausted\n";
            return 3;
          }
          Selection sel;
          for (size_t i = 0; i < m; ++i)
            sel.x_star.push_back((*slots[i])[idx[i]]);
          for (size_t i = 0; i < m; ++i)
            sel.y_star.push_back((*slots[m + i])[idx[m + i]]);
          for (size_t j = 0; j < slots.size() - 2 * m; ++j)
            sel.z_star.push_back((*slots[2 * m + j])[idx[2 * m + j]]);
          if (check_cq(d, sel)) {
            std::cout << "K" << ++printed << " from selection";
            for (const Vec& v : sel.x_star) std::cout << " x*=" << fmt_vec(v);
            for (const Vec& v : sel.y_star) std::cout << " y*=" << fmt_vec(v);
            for (const Vec& v : sel.z_star) std::cout << " z*=" << fmt_vec(v);
            std::cout << ":\n";
            print_cone(build_cone_k(d, sel));
          }
          size_t k = slots.size();
          bool done = slots.empty();
          while (k > 0) {
            --k;
            if (++idx[k] < slots[k]->size()) break;
            idx[k] = 0;
            if (k == 0) done = true;
          }
          if (done) break;
        }
        if (printed == 0) std::cout << "no qualifying selection\n";
        return 0;
      }
      SearchResult sr = search_selection(d, budget);
      if (sr.status != SearchStatus::Found) {
        std::cout << (sr.status == SearchStatus::ExhaustedBudget
                          ? "search budget exhausted\n"
                          : "no qualifying selection\n");
        return sr.status == SearchStatus::ExhaustedBudget ? 3 : 0;
      }
      ConeK K = build_cone_k(d, sr.sel);
      print_cone(K);
      if (sample_n > 0) {
        SamplingConfig cfg;
        cfg.seed = seed;
        std::cout << "contingent scores for " << sample_n
                  << " sampled member rays:\n";
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> U(-3, 3);
        for (int s = 0; s < sample_n; ++s) {
          LpProblem lp;
          lp.n_vars = p.n;
          for (int i = 0; i < p.n; ++i) lp.objective.push_back(U(rng));
          for (const ConeRow& r : K.rows) lp.le_rows.push_back({r.a, Rat(0)});
          lp.lower.assign(static_cast<size_t>(p.n), Rat(-1));
          lp.upper.assign(static_cast<size_t>(p.n), Rat(1));
          LpVerdict v = solve(lp);
          if (v.status != LpStatus::Optimal) continue;
          ContingentReport cr = contingent_membership(p, v.point, cfg);
          std::cout << "  v = " << fmt_vec(v.point) << " score " << cr.score
                    << "\n";
        }
      }
      return 0;
    }
  } catch (const ParseError& ex) {
    std::cerr << "invalid input (position " << ex.position
              << "): " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
