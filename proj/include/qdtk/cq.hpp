#ifndef QDTK_CQ_HPP
#define QDTK_CQ_HPP

#include <optional>

#include "qdtk/problem.hpp"

namespace qdtk {

// Concrete choice of elements: x*_i from sub f_i, y*_i from sup f_i per
// equality, z*_j from sup g_j per active inequality (ordered as
// ProgramData::active).
struct Selection {
  std::vector<Vec> x_star;
  std::vector<Vec> y_star;
  std::vector<Vec> z_star;
};

bool selection_valid(const ProgramData& d, const Selection& sel);

// The two translated pieces generated by an equality constraint:
// piece_a = sub f_i + y*_i, piece_b = -x*_i - sup f_i.
struct CiSet {
  Polytope piece_a;
  Polytope piece_b;
};

CiSet build_ci(const ProgramData& d, const Selection& sel, int i);

// Shifted inequality polytope sub g_j + z*_j (j indexes d.active order).
Polytope shifted_ineq(const ProgramData& d, const Selection& sel, int j);

struct Witness {
  Vec v;
  Rat margin;  // strict rows verified with slack >= margin > 0
};

struct AssumptionResult {
  bool ok = false;
  std::vector<Witness> witnesses;  // one per required direction
  int violated_index = -1;         // which i lacked a witness (1-based; 0 = v0)
};

AssumptionResult check_assumption_1(const ProgramData& d, const Selection& s);
AssumptionResult check_assumption_2(const ProgramData& d, const Selection& s);
AssumptionResult check_assumption_3(const ProgramData& d, const Selection& s);

struct CQWitness {
  std::vector<Witness> v_list;
  std::vector<Witness> w_list;
  Witness v0;
};

// All three assumptions at once; nullopt when any fails.
std::optional<CQWitness> check_cq(const ProgramData& d, const Selection& s);

// Disjointness form of the qualification (two polytope/cone families).
bool check_geometric(const ProgramData& d, const Selection& s);

struct MfcqReport {
  bool strong_li = false;      // each sum-set misses the span of the others
  bool ineq_disjoint = false;  // hull of inequality sum-sets misses the span
  bool v0_exists = false;
  Witness v0;
  bool ok = false;  // strong_li && ineq_disjoint
};

MfcqReport check_qd_mfcq(const ProgramData& d);

enum class SearchStatus { Found, ExhaustedComplete, ExhaustedBudget };

struct SearchResult {
  SearchStatus status = SearchStatus::ExhaustedComplete;
  Selection sel;
  CQWitness witness;
  unsigned long long examined = 0;
};

// Lexicographic scan over vertex choices (x*_1.., y*_1.., z*_1.., last
// coordinate fastest); first selection passing all three assumptions wins.
SearchResult search_selection(const ProgramData& d,
                              unsigned long long budget = 1000000);

// Single-inequality qualification: first vertex z* of sup g with
// 0 not in sub g + z*. Complete over sup g by convexity of the failing set.
std::optional<Vec> general_position_cq(const Quasidifferential& g);

}  // namespace qdtk

#endif
