#ifndef QDTK_QUASIDIFF_HPP
#define QDTK_QUASIDIFF_HPP

#include <vector>

#include "qdtk/expr.hpp"
#include "qdtk/geometry.hpp"

namespace qdtk {

// Pair [sub, sup] of convex compact polytopes representing the directional
// derivative v -> s(sub, v) + min over sup of <y*, v>.
struct Quasidifferential {
  Polytope sub;
  Polytope sup;

  bool operator==(const Quasidifferential&) const = default;
};

struct DiffOptions {
  // When activity of a max/min operand cannot be decided exactly, lenient
  // mode falls back to double comparison with this tolerance instead of
  // throwing ExactnessError.
  bool lenient = false;
  double tol = 1e-12;
};

// Rule-driven quasidifferential of e at x, in R^dim (dim >= var_count(e)).
Quasidifferential quasidiff(const ExprPtr& e, const Vec& x, int dim,
                            const DiffOptions& opt = {});

// Exact directional derivative from the pair.
Rat dir_deriv(const Quasidifferential& q, const Vec& v);

// sub + sup (Minkowski).
Polytope qd_sum_set(const Quasidifferential& q);

// Equivalent pair (sub + C, sup - C).
Quasidifferential shift_pair(const Quasidifferential& q, const Polytope& C);

}  // namespace qdtk

#endif
