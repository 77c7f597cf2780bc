#include "qdtk/optimality.hpp"

#include "qdtk/lp.hpp"

namespace qdtk {
namespace {

struct InclusionWitness {
  std::vector<Rat> objective;            // convex coefficients
  std::vector<std::vector<Rat>> conic;   // per conic polytope
  std::vector<Rat> gens;                 // per extra cone generator
};

// Solvability of  sum sigma p (over P0, convex) + sum tau q (conic, per
// polytope) + sum beta c (conic generators) = 0.
std::optional<InclusionWitness> zero_inclusion(
    int dim, const Polytope& P0, const std::vector<Polytope>& conic_sets,
    const std::vector<Vec>& gens) {
  int nv = static_cast<int>(P0.vertices.size());
  for (const Polytope& C : conic_sets)
    nv += static_cast<int>(C.vertices.size());
  nv += static_cast<int>(gens.size());

  std::vector<LpRow> eq;
  for (int dcoord = 0; dcoord < dim; ++dcoord) {
    LpRow r;
    r.a.assign(static_cast<size_t>(nv), Rat(0));
    size_t col = 0;
    for (const Vec& p : P0.vertices) r.a[col++] = p[static_cast<size_t>(dcoord)];
    for (const Polytope& C : conic_sets)
      for (const Vec& q : C.vertices)
        r.a[col++] = q[static_cast<size_t>(dcoord)];
    for (const Vec& c : gens) r.a[col++] = c[static_cast<size_t>(dcoord)];
    r.b = 0;
    eq.push_back(std::move(r));
  }
  LpRow sum1;
  sum1.a.assign(static_cast<size_t>(nv), Rat(0));
  for (size_t k = 0; k < P0.vertices.size(); ++k) sum1.a[k] = 1;
  sum1.b = 1;
  eq.push_back(std::move(sum1));

  std::vector<std::optional<Rat>> lower(static_cast<size_t>(nv), Rat(0));
  Feasibility f = feasible(eq, {}, nv, lower);
  if (!f.feasible) return std::nullopt;

  InclusionWitness w;
  size_t col = 0;
  for (size_t k = 0; k < P0.vertices.size(); ++k)
    w.objective.push_back(f.point[col++]);
  for (const Polytope& C : conic_sets) {
    std::vector<Rat> cs;
    for (size_t k = 0; k < C.vertices.size(); ++k) cs.push_back(f.point[col++]);
    w.conic.push_back(std::move(cs));
  }
  for (size_t k = 0; k < gens.size(); ++k) w.gens.push_back(f.point[col++]);
  return w;
}

Rat total(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const Rat& x : v) s += x;
  return s;
}

}  // namespace

ConeK build_cone_k(const ProgramData& d, const Selection& sel) {
  ConeK K;
  K.dim = d.dim;
  for (int i = 0; i < static_cast<int>(d.equality_qds.size()); ++i) {
    CiSet c = build_ci(d, sel, i);
    for (const Vec& p : c.piece_a.vertices)
      K.rows.push_back({p, ConeRow::Source::EqualitySub, i});
    for (const Vec& p : c.piece_b.vertices)
      K.rows.push_back({p, ConeRow::Source::EqualitySup, i});
  }
  for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j) {
    Polytope G = shifted_ineq(d, sel, j);
    for (const Vec& q : G.vertices)
      K.rows.push_back({q, ConeRow::Source::Inequality, j});
  }
  return K;
}

bool cone_k_member(const ConeK& K, const Vec& v) {
  if (static_cast<int>(v.size()) != K.dim)
    throw DimensionError("cone_k_member: dim mismatch");
  for (const ConeRow& r : K.rows)
    if (dot(r.a, v) > 0) return false;
  return true;
}

StationarityResult check_theorem41(const ProgramData& d, const Selection& sel,
                                   const Vec& y0_star) {
  if (!member(d.objective_qd.sup, y0_star))
    throw std::runtime_error("y0* is not a member of sup f0");

  Polytope P0 = translate(d.objective_qd.sub, y0_star);
  std::vector<Polytope> conic;
  for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j)
    conic.push_back(shifted_ineq(d, sel, j));
  std::vector<CiSet> cs;
  std::vector<Vec> gens;
  std::vector<std::pair<size_t, size_t>> piece_sizes;  // (|a|, |b|) per i
  for (int i = 0; i < static_cast<int>(d.equality_qds.size()); ++i) {
    CiSet c = build_ci(d, sel, i);
    piece_sizes.emplace_back(c.piece_a.vertices.size(),
                             c.piece_b.vertices.size());
    gens.insert(gens.end(), c.piece_a.vertices.begin(),
                c.piece_a.vertices.end());
    gens.insert(gens.end(), c.piece_b.vertices.begin(),
                c.piece_b.vertices.end());
    cs.push_back(std::move(c));
  }

  StationarityResult res;
  auto w = zero_inclusion(d.dim, P0, conic, gens);
  if (!w) return res;
  res.certified = true;
  res.cert.combo.objective = w->objective;
  res.cert.combo.ineq = w->conic;
  for (const auto& cj : w->conic) res.cert.lambda.push_back(total(cj));
  size_t col = 0;
  for (const auto& [na, nb] : piece_sizes) {
    std::vector<Rat> a_coeffs(w->gens.begin() + static_cast<long>(col),
                              w->gens.begin() + static_cast<long>(col + na));
    col += na;
    std::vector<Rat> b_coeffs(w->gens.begin() + static_cast<long>(col),
                              w->gens.begin() + static_cast<long>(col + nb));
    col += nb;
    res.cert.mu_under.push_back(total(a_coeffs));
    res.cert.mu_over.push_back(total(b_coeffs));
    res.cert.combo.eq_piece_a.push_back(std::move(a_coeffs));
    res.cert.combo.eq_piece_b.push_back(std::move(b_coeffs));
  }
  return res;
}

Certificate extract_multipliers(const ProgramData& d, const Selection& sel,
                                const Vec& y0_star) {
  StationarityResult r = check_theorem41(d, sel, y0_star);
  if (!r.certified)
    throw std::runtime_error(
        "extract_multipliers called on a refuted inclusion");
  return r.cert;
}

RefutationResult refute_optimality(const ProgramData& d, const Selection& sel) {
  if (!check_cq(d, sel))
    throw std::runtime_error(
        "constraint qualification not established for this selection; "
        "refutation verdict would be meaningless");
  for (const Vec& y0 : d.objective_qd.sup.vertices) {
    StationarityResult r = check_theorem41(d, sel, y0);
    if (!r.certified) return {RefutationResult::Kind::NonOptimal, y0};
  }
  return {RefutationResult::Kind::ConsistentOverVertices, {}};
}

SetConstrainedResult check_theorem42(const ProgramData& d, const Selection& sel,
                                     const Vec& y0_star, const PolyhedralSet& A,
                                     const Vec& anchor) {
  if (!d.equality_qds.empty())
    throw std::runtime_error(
        "the set-constrained form requires no equality constraints");
  SetConstrainedResult res;
  for (const LpRow& r : A.rows) {
    Rat v = dot(r.a, anchor);
    if (v > r.b) throw std::runtime_error("anchor lies outside the set");
    if (v == r.b) res.normal_generators.push_back(r.a);
  }

  // Qualification: 0 not in co{shifted inequality sets} + normal cone.
  res.cq_ok = true;
  if (!d.inequality_qds.empty()) {
    std::vector<Vec> pts;
    for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j) {
      Polytope G = shifted_ineq(d, sel, j);
      pts.insert(pts.end(), G.vertices.begin(), G.vertices.end());
    }
    if (zero_inclusion(d.dim, convex_hull(d.dim, pts), {},
                       res.normal_generators))
      res.cq_ok = false;
  }
  if (!res.cq_ok) return res;

  Polytope P0 = translate(d.objective_qd.sub, y0_star);
  std::vector<Polytope> conic;
  for (int j = 0; j < static_cast<int>(d.inequality_qds.size()); ++j)
    conic.push_back(shifted_ineq(d, sel, j));
  auto w = zero_inclusion(d.dim, P0, conic, res.normal_generators);
  if (!w) return res;
  res.certified = true;
  res.cert.combo.objective = w->objective;
  res.cert.combo.ineq = w->conic;
  for (const auto& cj : w->conic) res.cert.lambda.push_back(total(cj));
  return res;
}

bool polar_check(const ProgramData& d, const Selection& sel,
                 const Vec& candidate) {
  std::vector<Polytope> pieces;
  for (int i = 0; i < static_cast<int>(d.equality_qds.size()); ++i) {
    CiSet c = build_ci(d, sel, i);
    pieces.push_back(std::move(c.piece_a));
    pieces.push_back(std::move(c.piece_b));
  }
  return cone_member(cone_hull(d.dim, pieces), candidate);
}

}  // namespace qdtk
