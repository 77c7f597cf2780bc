#ifndef QDTK_PROBLEM_HPP
#define QDTK_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdtk/lp.hpp"
#include "qdtk/quasidiff.hpp"

namespace qdtk {

// Intersection of half-spaces <a, x> <= b.
struct PolyhedralSet {
  std::vector<LpRow> rows;
};

// User-asserted analytic hypotheses that cannot be derived from the AST.
struct AssumptionFlags {
  bool uniform_dd = false;
  bool hadamard_dd = false;
  bool continuous_near_anchor = false;
};

// min objective(x)  s.t.  equalities = 0, inequalities <= 0, x in set_A.
struct Problem {
  int n = 0;
  Vec anchor;
  ExprPtr objective;
  std::vector<ExprPtr> equalities;
  std::vector<ExprPtr> inequalities;
  std::optional<PolyhedralSet> set_A;
  AssumptionFlags flags;
};

// Empty list = valid. Each entry names one violation (dimension, anchor
// infeasibility, exactness failure, unsupported combination).
std::vector<std::string> validate(const Problem& p);

// Indices j with g_j(anchor) = 0 exactly; throws if the anchor is
// infeasible or a constraint value cannot be decided exactly.
std::vector<int> active_set(const Problem& p);

// Everything the qualification/optimality layers consume: exact pairs at
// the anchor plus the active inequality index list.
struct ProgramData {
  int dim = 0;
  Quasidifferential objective_qd;
  std::vector<Quasidifferential> equality_qds;    // per i
  std::vector<Quasidifferential> inequality_qds;  // per active j, in order
  std::vector<int> active;                        // original j indices
};

ProgramData differentiate(const Problem& p, const DiffOptions& opt = {});

}  // namespace qdtk

#endif
