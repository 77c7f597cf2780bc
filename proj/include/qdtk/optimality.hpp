#ifndef QDTK_OPTIMALITY_HPP
#define QDTK_OPTIMALITY_HPP

#include "qdtk/cq.hpp"

namespace qdtk {

// One support-function inequality <a, v> <= 0 with its origin recorded.
struct ConeRow {
  enum class Source { EqualitySub, EqualitySup, Inequality };
  Vec a;
  Source source;
  int index;  // equality i or active-inequality position j (0-based)
};

struct ConeK {
  int dim = 0;
  std::vector<ConeRow> rows;  // empty = all of R^n
};

ConeK build_cone_k(const ProgramData& d, const Selection& sel);
bool cone_k_member(const ConeK& K, const Vec& v);

// Exact conic/convex coefficients reconstructing the zero vector from the
// named polytope vertices.
struct Combo {
  std::vector<Rat> objective;               // convex, over sub f0 + y0*
  std::vector<std::vector<Rat>> ineq;       // conic, per active j
  std::vector<std::vector<Rat>> eq_piece_a; // conic, per i over sub f_i + y*_i
  std::vector<std::vector<Rat>> eq_piece_b; // conic, per i over -x*_i - sup f_i
};

struct Certificate {
  std::vector<Rat> lambda;    // per active inequality (position in d.active)
  std::vector<Rat> mu_under;  // per equality
  std::vector<Rat> mu_over;   // per equality
  Combo combo;
};

struct StationarityResult {
  bool certified = false;
  Certificate cert;  // meaningful when certified
};

// Zero-inclusion feasibility for a given y0* in sup f0; the cone part is
// generated by the C_i pieces.
StationarityResult check_theorem41(const ProgramData& d, const Selection& sel,
                                   const Vec& y0_star);

// Regrouped multipliers of a certified result; throws on refuted input.
Certificate extract_multipliers(const ProgramData& d, const Selection& sel,
                                const Vec& y0_star);

struct RefutationResult {
  enum class Kind { NonOptimal, ConsistentOverVertices } kind;
  Vec y0_witness;  // set when NonOptimal
};

// Requires the selection to pass the qualification (throws otherwise);
// scans the vertices of sup f0 for a refuting y0*.
RefutationResult refute_optimality(const ProgramData& d, const Selection& sel);

struct SetConstrainedResult {
  bool cq_ok = false;      // 0 outside hull of shifted sets + normal cone
  bool certified = false;  // meaningful when cq_ok
  Certificate cert;
  std::vector<Vec> normal_generators;
};

// Inequality + polyhedral-set variant; requires no equality constraints
// and anchor inside A.
SetConstrainedResult check_theorem42(const ProgramData& d, const Selection& sel,
                                     const Vec& y0_star, const PolyhedralSet& A,
                                     const Vec& anchor);

// True iff candidate lies in the cone generated by all C_i pieces (the
// polar of the equality-row cone).
bool polar_check(const ProgramData& d, const Selection& sel,
                 const Vec& candidate);

}  // namespace qdtk

#endif
