#include "qdtk/analysis.hpp"

namespace qdtk {
namespace {

// Set-constrained path: the qualification gate is 0 outside
// co{shifted inequality sets} + N_A, scanned over vertex selections.
void analyze_with_set(const Problem& p, const AnalysisOptions& opt,
                      AnalysisReport& rep) {
  const auto& d = rep.data;
  const size_t l = d.inequality_qds.size();
  std::vector<size_t> idx(l, 0);
  rep.search_status = SearchStatus::ExhaustedComplete;
  for (;;) {
    if (rep.examined >= opt.budget) {
      rep.search_status = SearchStatus::ExhaustedBudget;
      return;
    }
    ++rep.examined;
    Selection sel;
    for (size_t j = 0; j < l; ++j)
      sel.z_star.push_back(d.inequality_qds[j].sup.vertices[idx[j]]);

    SetConstrainedResult first = check_theorem42(
        d, sel, d.objective_qd.sup.vertices[0], *p.set_A, p.anchor);
    if (first.cq_ok) {
      rep.search_status = SearchStatus::Found;
      rep.sel = sel;
      rep.normal_generators = first.normal_generators;
      rep.cone = build_cone_k(d, sel);
      bool all_ok = true;
      for (const Vec& y0 : d.objective_qd.sup.vertices) {
        SetConstrainedResult r =
            check_theorem42(d, sel, y0, *p.set_A, p.anchor);
        rep.y_verdicts.push_back({y0, r.certified, r.cert});
        if (!r.certified && all_ok) {
          all_ok = false;
          rep.y0_witness = y0;
        }
      }
      rep.classification = all_ok ? Classification::KKTConsistent
                                  : Classification::NonOptimal;
      return;
    }

    size_t k = l;
    bool wrapped = true;
    while (k > 0) {
      --k;
      if (++idx[k] < d.inequality_qds[k].sup.vertices.size()) {
        wrapped = false;
        break;
      }
      idx[k] = 0;
    }
    if (l == 0 || wrapped) return;  // exhausted (complete)
  }
}

}  // namespace

AnalysisReport analyze(const Problem& p, const AnalysisOptions& opt) {
  AnalysisReport rep;
  rep.data = differentiate(p, opt.diff);
  rep.mfcq = check_qd_mfcq(rep.data);
  for (const auto& q : rep.data.inequality_qds)
    rep.general_position.push_back(general_position_cq(q));
  rep.used_set_A = p.set_A.has_value();

  if (rep.used_set_A) {
    analyze_with_set(p, opt, rep);
  } else {
    SearchResult sr = search_selection(rep.data, opt.budget);
    rep.search_status = sr.status;
    rep.examined = sr.examined;
    if (sr.status == SearchStatus::Found) {
      rep.sel = sr.sel;
      rep.witness = sr.witness;
      rep.cone = build_cone_k(rep.data, rep.sel);
      bool all_ok = true;
      for (const Vec& y0 : rep.data.objective_qd.sup.vertices) {
        StationarityResult r = check_theorem41(rep.data, rep.sel, y0);
        rep.y_verdicts.push_back({y0, r.certified, r.cert});
        if (!r.certified && all_ok) {
          all_ok = false;
          rep.y0_witness = y0;
        }
      }
      rep.classification = all_ok ? Classification::KKTConsistent
                                  : Classification::NonOptimal;
    } else {
      rep.classification = Classification::CQNotEstablished;
    }
  }

  if (opt.run_sampling && rep.classification == Classification::NonOptimal) {
    rep.sampled = true;
    rep.improvement = local_improvement(p, opt.sampling);
  }
  return rep;
}

}  // namespace qdtk
