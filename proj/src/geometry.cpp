#include "qdtk/geometry.hpp"

#include <algorithm>

#include "qdtk/lp.hpp"

namespace qdtk {
namespace {

void check_dim(int dim, const Vec& v, const char* where) {
  if (static_cast<int>(v.size()) != dim) throw DimensionError(where);
}

// Feasibility of  sum alpha_k p_k (+ sum beta_g c_g) (+ free gamma_j s_j) = x,
// sum alpha = 1, alpha,beta >= 0.  The workhorse behind every membership and
// disjointness decision in this module.
bool combination_exists(int dim, const std::vector<Vec>& conv,
                        const std::vector<Vec>& conic,
                        const std::vector<Vec>& lin, const Vec& x) {
  const int na = static_cast<int>(conv.size());
  const int nb = static_cast<int>(conic.size());
  const int ng = static_cast<int>(lin.size());
  const int nv = na + nb + ng;
  if (nv == 0) return is_zero(x);

  std::vector<LpRow> eq;
  for (int d = 0; d < dim; ++d) {
    LpRow r;
    r.a.assign(static_cast<size_t>(nv), Rat(0));
    for (int k = 0; k < na; ++k) r.a[k] = conv[k][d];
    for (int k = 0; k < nb; ++k) r.a[na + k] = conic[k][d];
    for (int k = 0; k < ng; ++k) r.a[na + nb + k] = lin[k][d];
    r.b = x[static_cast<size_t>(d)];
    eq.push_back(std::move(r));
  }
  if (na > 0) {
    LpRow sum1;
    sum1.a.assign(static_cast<size_t>(nv), Rat(0));
    for (int k = 0; k < na; ++k) sum1.a[k] = 1;
    sum1.b = 1;
    eq.push_back(std::move(sum1));
  }
  std::vector<std::optional<Rat>> lower(static_cast<size_t>(nv), Rat(0));
  for (int k = 0; k < ng; ++k) lower[static_cast<size_t>(na + nb + k)].reset();
  return feasible(eq, {}, nv, lower).feasible;
}

}  // namespace

Polytope make_polytope(int dim, std::vector<Vec> vertices) {
  if (vertices.empty()) throw std::runtime_error("polytope: empty vertex list");
  for (const Vec& v : vertices) check_dim(dim, v, "polytope vertex dim");
  return Polytope{dim, std::move(vertices)};
}

Polytope singleton(const Vec& p) {
  return Polytope{static_cast<int>(p.size()), {p}};
}

MaxFace support(const Polytope& P, const Vec& v) {
  check_dim(P.dim, v, "support: direction dim");
  MaxFace f;
  bool first = true;
  for (const Vec& p : P.vertices) {
    Rat d = dot(p, v);
    if (first || d > f.value) {
      f.value = d;
      first = false;
    }
  }
  for (const Vec& p : P.vertices)
    if (dot(p, v) == f.value) f.face_vertices.push_back(p);
  return f;
}

Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  if (P.dim != Q.dim) throw DimensionError("minkowski_sum: dim mismatch");
  std::vector<Vec> sums;
  sums.reserve(P.vertices.size() * Q.vertices.size());
  for (const Vec& p : P.vertices)
    for (const Vec& q : Q.vertices) sums.push_back(add(p, q));
  return canonicalize(Polytope{P.dim, std::move(sums)});
}

Polytope scale(const Polytope& P, const Rat& lambda) {
  std::vector<Vec> vs;
  vs.reserve(P.vertices.size());
  for (const Vec& p : P.vertices) vs.push_back(qdtk::scale(p, lambda));
  return canonicalize(Polytope{P.dim, std::move(vs)});
}

Polytope negate(const Polytope& P) { return scale(P, Rat(-1)); }

Polytope translate(const Polytope& P, const Vec& t) {
  check_dim(P.dim, t, "translate: dim mismatch");
  std::vector<Vec> vs;
  vs.reserve(P.vertices.size());
  for (const Vec& p : P.vertices) vs.push_back(add(p, t));
  return canonicalize(Polytope{P.dim, std::move(vs)});
}

Polytope convex_hull(int dim, const std::vector<Vec>& points) {
  return canonicalize(make_polytope(dim, points));
}

Polytope canonicalize(const Polytope& P) {
  // Dedup first, then drop every point lying in the hull of the others.
  // A vertex is redundant iff it is a convex combination of the rest; the
  // test is LP membership, so this works in any dimension.
  std::vector<Vec> vs = P.vertices;
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  for (size_t i = vs.size(); i-- > 0;) {
    if (vs.size() == 1) break;
    std::vector<Vec> others;
    others.reserve(vs.size() - 1);
    for (size_t k = 0; k < vs.size(); ++k)
      if (k != i) others.push_back(vs[k]);
    if (combination_exists(P.dim, others, {}, {}, vs[i]))
      vs.erase(vs.begin() + static_cast<long>(i));
  }
  return Polytope{P.dim, std::move(vs)};
}

FinCone cone_hull(int dim, const std::vector<Polytope>& sets) {
  std::vector<Vec> gens;
  for (const Polytope& P : sets) {
    if (P.dim != dim) throw DimensionError("cone_hull: dim mismatch");
    Polytope C = canonicalize(P);
    gens.insert(gens.end(), C.vertices.begin(), C.vertices.end());
  }
  std::sort(gens.begin(), gens.end(), lex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return FinCone{dim, std::move(gens)};
}

bool member(const Polytope& P, const Vec& x) {
  check_dim(P.dim, x, "member: dim mismatch");
  return combination_exists(P.dim, P.vertices, {}, {}, x);
}

bool cone_member(const FinCone& K, const Vec& x) {
  check_dim(K.dim, x, "cone_member: dim mismatch");
  return combination_exists(K.dim, {}, K.generators, {}, x);
}

bool polytope_cone_disjoint(const Polytope& P, const FinCone& K) {
  if (P.dim != K.dim) throw DimensionError("polytope_cone_disjoint");
  // Common point iff sum alpha p = sum beta g is solvable:
  // move the conic part to the right-hand side via negated generators.
  std::vector<Vec> neg_gens;
  neg_gens.reserve(K.generators.size());
  for (const Vec& g : K.generators) neg_gens.push_back(qdtk::negate(g));
  return !combination_exists(P.dim, P.vertices, neg_gens, {}, zero_vec(P.dim));
}

bool subspace_intersects(const Polytope& P, const std::vector<Vec>& span_of) {
  for (const Vec& s : span_of) check_dim(P.dim, s, "subspace_intersects");
  std::vector<Vec> neg_span;
  neg_span.reserve(span_of.size());
  for (const Vec& s : span_of) neg_span.push_back(qdtk::negate(s));
  return combination_exists(P.dim, P.vertices, {}, neg_span, zero_vec(P.dim));
}

bool general_position_at(const Vec& v, const Polytope& A, const Polytope& B) {
  if (A.dim != B.dim) throw DimensionError("general_position_at");
  MaxFace fb = support(B, v);
  MaxFace fa = support(A, v);
  Polytope face_a{A.dim, fa.face_vertices};
  for (const Vec& b : fb.face_vertices)
    if (!member(face_a, b)) return true;
  return false;
}

bool max_face_singleton(const Polytope& P, const Vec& v) {
  MaxFace f = support(P, v);
  Polytope face = canonicalize(Polytope{P.dim, f.face_vertices});
  return face.vertices.size() == 1;
}

}  // namespace qdtk
