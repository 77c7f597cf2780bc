#include "qdtk/cq.hpp"

#include "qdtk/lp.hpp"

namespace qdtk {
namespace {

// Maximize t over ||v||_inf <= 1, 0 <= t <= 1, <p,v> + t <= 0 for every
// vertex p of the strict sets, <q,v> <= 0 for every vertex q of the weak
// sets. A positive optimum certifies the required direction.
std::optional<Witness> find_direction(int dim,
                                      const std::vector<Polytope>& strict,
                                      const std::vector<Polytope>& weak) {
  LpProblem lp;
  lp.n_vars = dim + 1;
  lp.objective.assign(static_cast<size_t>(dim + 1), Rat(0));
  lp.objective.back() = 1;
  auto add_row = [&](const Vec& p, bool is_strict) {
    LpRow r;
    r.a = p;
    r.a.push_back(is_strict ? Rat(1) : Rat(0));
    r.b = 0;
    lp.le_rows.push_back(std::move(r));
  };
  for (const Polytope& S : strict)
    for (const Vec& p : S.vertices) add_row(p, true);
  for (const Polytope& W : weak)
    for (const Vec& q : W.vertices) add_row(q, false);
  lp.lower.assign(static_cast<size_t>(dim + 1), Rat(-1));
  lp.upper.assign(static_cast<size_t>(dim + 1), Rat(1));
  lp.lower.back() = Rat(0);

  LpVerdict v = solve(lp);
  if (v.status != LpStatus::Optimal || v.value <= 0) return std::nullopt;
  Witness w;
  w.v.assign(v.point.begin(), v.point.end() - 1);
  w.margin = v.value;
  return w;
}

std::vector<CiSet> all_ci(const ProgramData& d, const Selection& sel) {
  std::vector<CiSet> cs;
  for (int i = 0; i < static_cast<int>(d.equality_qds.size()); ++i)
    cs.push_back(build_ci(d, sel, i));
  return cs;
}

AssumptionResult equality_family(const ProgramData& d, const Selection& sel,
                                 bool strict_on_a) {
  AssumptionResult res;
  const int m = static_cast<int>(d.equality_qds.size());
  std::vector<CiSet> cs = all_ci(d, sel);
  for (int i = 0; i < m; ++i) {
    std::vector<Polytope> strict{strict_on_a ? cs[static_cast<size_t>(i)].piece_a
                                             : cs[static_cast<size_t>(i)].piece_b};
    std::vector<Polytope> weak;
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      weak.push_back(cs[static_cast<size_t>(k)].piece_a);
      weak.push_back(cs[static_cast<size_t>(k)].piece_b);
    }
    auto w = find_direction(d.dim, strict, weak);
    if (!w) {
      res.violated_index = i + 1;
      return res;
    }
    res.witnesses.push_back(*w);
  }
  res.ok = true;
  return res;
}

}  // namespace

bool selection_valid(const ProgramData& d, const Selection& sel) {
  const size_t m = d.equality_qds.size();
  const size_t l = d.inequality_qds.size();
  if (sel.x_star.size() != m || sel.y_star.size() != m ||
      sel.z_star.size() != l)
    return false;
  for (size_t i = 0; i < m; ++i) {
    if (!member(d.equality_qds[i].sub, sel.x_star[i])) return false;
    if (!member(d.equality_qds[i].sup, sel.y_star[i])) return false;
  }
  for (size_t j = 0; j < l; ++j)
    if (!member(d.inequality_qds[j].sup, sel.z_star[j])) return false;
  return true;
}

CiSet build_ci(const ProgramData& d, const Selection& sel, int i) {
  const auto& q = d.equality_qds.at(static_cast<size_t>(i));
  CiSet c;
  c.piece_a = translate(q.sub, sel.y_star.at(static_cast<size_t>(i)));
  c.piece_b =
      translate(negate(q.sup), negate(sel.x_star.at(static_cast<size_t>(i))));
  return c;
}

Polytope shifted_ineq(const ProgramData& d, const Selection& sel, int j) {
  return translate(d.inequality_qds.at(static_cast<size_t>(j)).sub,
                   sel.z_star.at(static_cast<size_t>(j)));
}

AssumptionResult check_assumption_1(const ProgramData& d, const Selection& s) {
  return equality_family(d, s, true);
}

AssumptionResult check_assumption_2(const ProgramData& d, const Selection& s) {
  return equality_family(d, s, false);
}

AssumptionResult check_assumption_3(const ProgramData& d, const Selection& s) {
  AssumptionResult res;
  std::vector<Polytope> strict;
  for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j)
    strict.push_back(shifted_ineq(d, s, j));
  std::vector<Polytope> weak;
  for (const CiSet& c : all_ci(d, s)) {
    weak.push_back(c.piece_a);
    weak.push_back(c.piece_b);
  }
  auto w = find_direction(d.dim, strict, weak);
  if (!w) {
    res.violated_index = 0;
    return res;
  }
  res.ok = true;
  res.witnesses.push_back(*w);
  return res;
}

std::optional<CQWitness> check_cq(const ProgramData& d, const Selection& s) {
  AssumptionResult a1 = check_assumption_1(d, s);
  if (!a1.ok) return std::nullopt;
  AssumptionResult a2 = check_assumption_2(d, s);
  if (!a2.ok) return std::nullopt;
  AssumptionResult a3 = check_assumption_3(d, s);
  if (!a3.ok) return std::nullopt;
  CQWitness w;
  w.v_list = std::move(a1.witnesses);
  w.w_list = std::move(a2.witnesses);
  w.v0 = a3.witnesses[0];
  return w;
}

bool check_geometric(const ProgramData& d, const Selection& s) {
  const int m = static_cast<int>(d.equality_qds.size());
  std::vector<CiSet> cs = all_ci(d, s);
  auto neg_cone = [&](int skip) {
    std::vector<Polytope> negs;
    for (int k = 0; k < m; ++k) {
      if (k == skip) continue;
      negs.push_back(negate(cs[static_cast<size_t>(k)].piece_a));
      negs.push_back(negate(cs[static_cast<size_t>(k)].piece_b));
    }
    return cone_hull(d.dim, negs);
  };
  for (int i = 0; i < m; ++i) {
    FinCone K = neg_cone(i);
    if (!polytope_cone_disjoint(cs[static_cast<size_t>(i)].piece_a, K))
      return false;
    if (!polytope_cone_disjoint(cs[static_cast<size_t>(i)].piece_b, K))
      return false;
  }
  if (!d.inequality_qds.empty()) {
    std::vector<Vec> pts;
    for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j) {
      Polytope P = shifted_ineq(d, s, j);
      pts.insert(pts.end(), P.vertices.begin(), P.vertices.end());
    }
    if (!polytope_cone_disjoint(convex_hull(d.dim, pts), neg_cone(-1)))
      return false;
  }
  return true;
}

MfcqReport check_qd_mfcq(const ProgramData& d) {
  MfcqReport rep;
  const int m = static_cast<int>(d.equality_qds.size());
  std::vector<Polytope> sums;
  for (const auto& q : d.equality_qds) sums.push_back(qd_sum_set(q));

  rep.strong_li = true;
  for (int i = 0; i < m && rep.strong_li; ++i) {
    std::vector<Vec> span;
    for (int k = 0; k < m; ++k)
      if (k != i)
        span.insert(span.end(), sums[static_cast<size_t>(k)].vertices.begin(),
                    sums[static_cast<size_t>(k)].vertices.end());
    if (subspace_intersects(sums[static_cast<size_t>(i)], span))
      rep.strong_li = false;
  }

  rep.ineq_disjoint = true;
  std::vector<Polytope> g_sums;
  for (const auto& q : d.inequality_qds) g_sums.push_back(qd_sum_set(q));
  if (!g_sums.empty()) {
    std::vector<Vec> pts, span;
    for (const Polytope& G : g_sums)
      pts.insert(pts.end(), G.vertices.begin(), G.vertices.end());
    for (const Polytope& S : sums)
      span.insert(span.end(), S.vertices.begin(), S.vertices.end());
    if (subspace_intersects(convex_hull(d.dim, pts), span))
      rep.ineq_disjoint = false;
  }

  // v0: annihilates every equality sum-set, strictly negative on every
  // inequality sum-set.
  {
    LpProblem lp;
    lp.n_vars = d.dim + 1;
    lp.objective.assign(static_cast<size_t>(d.dim + 1), Rat(0));
    lp.objective.back() = 1;
    for (const Polytope& S : sums)
      for (const Vec& p : S.vertices) {
        LpRow r;
        r.a = p;
        r.a.push_back(Rat(0));
        r.b = 0;
        lp.eq_rows.push_back(std::move(r));
      }
    for (const Polytope& G : g_sums)
      for (const Vec& q : G.vertices) {
        LpRow r;
        r.a = q;
        r.a.push_back(Rat(1));
        r.b = 0;
        lp.le_rows.push_back(std::move(r));
      }
    lp.lower.assign(static_cast<size_t>(d.dim + 1), Rat(-1));
    lp.upper.assign(static_cast<size_t>(d.dim + 1), Rat(1));
    lp.lower.back() = Rat(0);
    LpVerdict v = solve(lp);
    if (v.status == LpStatus::Optimal && v.value > 0) {
      rep.v0_exists = true;
      rep.v0.v.assign(v.point.begin(), v.point.end() - 1);
      rep.v0.margin = v.value;
    }
  }

  rep.ok = rep.strong_li && rep.ineq_disjoint;
  return rep;
}

SearchResult search_selection(const ProgramData& d,
                              unsigned long long budget) {
  SearchResult res;
  std::vector<const std::vector<Vec>*> slots;
  for (const auto& q : d.equality_qds) slots.push_back(&q.sub.vertices);
  for (const auto& q : d.equality_qds) slots.push_back(&q.sup.vertices);
  for (const auto& q : d.inequality_qds) slots.push_back(&q.sup.vertices);
  const size_t m = d.equality_qds.size();
  const size_t l = d.inequality_qds.size();
  std::vector<size_t> idx(slots.size(), 0);

  for (;;) {
    if (res.examined >= budget) {
      res.status = SearchStatus::ExhaustedBudget;
      return res;
    }
    ++res.examined;

    Selection sel;
    for (size_t i = 0; i < m; ++i) sel.x_star.push_back((*slots[i])[idx[i]]);
    for (size_t i = 0; i < m; ++i)
      sel.y_star.push_back((*slots[m + i])[idx[m + i]]);
    for (size_t j = 0; j < l; ++j)
      sel.z_star.push_back((*slots[2 * m + j])[idx[2 * m + j]]);

    if (auto w = check_cq(d, sel)) {
      res.status = SearchStatus::Found;
      res.sel = std::move(sel);
      res.witness = std::move(*w);
      return res;
    }

    // Odometer, last slot fastest.
    size_t k = slots.size();
    while (k > 0) {
      --k;
      if (++idx[k] < slots[k]->size()) break;
      idx[k] = 0;
      if (k == 0) {
        res.status = SearchStatus::ExhaustedComplete;
        return res;
      }
    }
    if (slots.empty()) {
      res.status = SearchStatus::ExhaustedComplete;
      return res;
    }
  }
}

std::optional<Vec> general_position_cq(const Quasidifferential& g) {
  Vec zero = zero_vec(g.sub.dim);
  for (const Vec& z : g.sup.vertices)
    if (!member(translate(g.sub, z), zero)) return z;
  return std::nullopt;
}

}  // namespace qdtk
