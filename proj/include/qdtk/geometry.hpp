#ifndef QDTK_GEOMETRY_HPP
#define QDTK_GEOMETRY_HPP

#include <vector>

#include "qdtk/rational.hpp"

namespace qdtk {

// Convex compact set in R^n as a finite vertex list (V-representation).
// Redundant points are permitted; canonicalize() reduces the list to the
// exact extreme-point set sorted lexicographically.
struct Polytope {
  int dim = 0;
  std::vector<Vec> vertices;

  bool operator==(const Polytope&) const = default;
};

// Finitely generated convex cone; an empty generator list is the cone {0}.
struct FinCone {
  int dim = 0;
  std::vector<Vec> generators;
};

struct MaxFace {
  Rat value;
  std::vector<Vec> face_vertices;
};

Polytope make_polytope(int dim, std::vector<Vec> vertices);
Polytope singleton(const Vec& p);

MaxFace support(const Polytope& P, const Vec& v);

Polytope minkowski_sum(const Polytope& P, const Polytope& Q);
Polytope scale(const Polytope& P, const Rat& lambda);
Polytope negate(const Polytope& P);
Polytope translate(const Polytope& P, const Vec& t);

Polytope convex_hull(int dim, const std::vector<Vec>& points);
Polytope canonicalize(const Polytope& P);

// Generators = union of extreme points of the inputs.
FinCone cone_hull(int dim, const std::vector<Polytope>& sets);

bool member(const Polytope& P, const Vec& x);
bool cone_member(const FinCone& K, const Vec& x);

// True iff P and K have no common point (decided by exact LP).
bool polytope_cone_disjoint(const Polytope& P, const FinCone& K);

// True iff P meets the linear span of the given vectors.
bool subspace_intersects(const Polytope& P, const std::vector<Vec>& span_of);

// Per-direction general position probe: true iff the max-face of B for v is
// not contained in the max-face of A for v.
bool general_position_at(const Vec& v, const Polytope& A, const Polytope& B);

bool max_face_singleton(const Polytope& P, const Vec& v);

}  // namespace qdtk

#endif
