#ifndef QDTK_SAMPLING_HPP
#define QDTK_SAMPLING_HPP

#include <string>
#include <vector>

#include "qdtk/problem.hpp"

namespace qdtk {

// Floating-point validation knobs. Everything here is approximate by
// design; the exact modules never consume these results.
struct SamplingConfig {
  std::vector<double> ladder{1e-3, 1e-4, 1e-5};  // decreasing step sizes
  int grid = 17;                                 // odd per-axis point count
  double radius_factor = 2.0;                    // search radius / alpha
  int samples = 64;
  unsigned long long seed = 20240817;
  double feas_tol = 1e-9;
  double cone_tol = 1e-3;
  double improve_radius = 0.5;
};

struct FdReport {
  double estimate = 0;  // finest-step value
  bool converged = false;
  std::vector<double> per_step;
};

FdReport fd_dir_deriv(const ExprPtr& e, const Vec& x, const Vec& v,
                      const SamplingConfig& cfg = {});

struct ContingentReport {
  double score = 0;  // estimated d(x + alpha v, M) / alpha at smallest alpha
  bool member_ish = false;
  std::vector<double> per_alpha;
};

// Grid-plus-refinement upper bound on the scaled distance to the feasible
// set along v; small scores indicate (near-)membership in the contingent
// cone, large scores are advisory only.
ContingentReport contingent_membership(const Problem& p, const Vec& v,
                                       const SamplingConfig& cfg = {});

struct Improvement {
  bool found = false;
  Vec point;
  Rat value;        // exact objective at the point (when exact)
  bool exact = false;
  double approx_value = 0;
};

// Ray search for a feasible point with a strictly smaller objective;
// rational candidates are rechecked exactly before being reported.
Improvement local_improvement(const Problem& p, const SamplingConfig& cfg = {});

struct SignCheck {
  std::string label;
  Rat value;
  char relation;  // '<', '>', '='  (required vs 0)
  bool pass = false;
};

// Exact directional-derivative sign patterns implied by a witness family:
// each v_i strictly decreases f_i and annihilates the other equalities,
// each w_i strictly increases f_i, v0 strictly decreases every active
// inequality while annihilating all equalities.
std::vector<SignCheck> check_dd_witness_signs(const ProgramData& d,
                                              const std::vector<Vec>& v_list,
                                              const std::vector<Vec>& w_list,
                                              const Vec& v0);

}  // namespace qdtk

#endif
