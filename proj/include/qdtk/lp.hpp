#ifndef QDTK_LP_HPP
#define QDTK_LP_HPP

#include <optional>
#include <vector>

#include "qdtk/rational.hpp"

namespace qdtk {

// Exact rational LP in the form
//   maximize  c'x
//   s.t.      eq_rows:  a'x  = b
//             le_rows:  a'x <= b
//             optional per-variable lower/upper bounds,
// solved by a dense two-phase primal simplex with Bland's rule.
// Verdicts are exact; Optimal points are basic feasible solutions.
struct LpRow {
  Vec a;
  Rat b;
};

struct LpProblem {
  int n_vars = 0;
  Vec objective;  // empty means zero objective (pure feasibility)
  std::vector<LpRow> eq_rows;
  std::vector<LpRow> le_rows;
  std::vector<std::optional<Rat>> lower;  // empty or size n_vars
  std::vector<std::optional<Rat>> upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpVerdict {
  LpStatus status = LpStatus::Infeasible;
  Vec point;  // valid when Optimal
  Rat value;  // objective at point
};

LpVerdict solve(const LpProblem& p);

// Phase-one wrapper: Witness(point) iff the system is feasible.
struct Feasibility {
  bool feasible = false;
  Vec point;
};

Feasibility feasible(const std::vector<LpRow>& eq_rows,
                     const std::vector<LpRow>& le_rows, int n_vars,
                     const std::vector<std::optional<Rat>>& lower = {},
                     const std::vector<std::optional<Rat>>& upper = {});

}  // namespace qdtk

#endif
