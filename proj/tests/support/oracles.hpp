// Independent brute-force oracles used only by the test suites.
// Deliberately different algorithms from the library: vertex enumeration
// instead of simplex, orientation predicates instead of LP membership.
#ifndef QDTK_TEST_ORACLES_HPP
#define QDTK_TEST_ORACLES_HPP

#include <algorithm>
#include <optional>

#include "qdtk/geometry.hpp"
#include "qdtk/lp.hpp"

namespace oracle {

using qdtk::LpProblem;
using qdtk::LpStatus;
using qdtk::Rat;
using qdtk::Vec;

// Exact Gaussian elimination; nullopt when the system is singular.
inline std::optional<Vec> solve_square(std::vector<Vec> A, Vec b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

struct LpOracleVerdict {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
};

// Exhaustive vertex enumeration. Requires finite lower and upper bounds on
// every variable (the region is bounded, so Unbounded cannot occur).
inline LpOracleVerdict enumerate_lp(const LpProblem& p) {
  const size_t n = static_cast<size_t>(p.n_vars);
  // All constraints as <a,x> (= / <=) b; bounds become rows.
  std::vector<std::pair<Vec, Rat>> eqs, les;
  for (const auto& r : p.eq_rows) eqs.push_back({r.a, r.b});
  for (const auto& r : p.le_rows) les.push_back({r.a, r.b});
  for (size_t i = 0; i < n; ++i) {
    Vec e(n, Rat(0));
    e[i] = 1;
    les.push_back({e, *p.upper[i]});
    Vec f(n, Rat(0));
    f[i] = -1;
    les.push_back({f, -*p.lower[i]});
  }
  std::vector<std::pair<Vec, Rat>> all = eqs;
  all.insert(all.end(), les.begin(), les.end());

  LpOracleVerdict out;
  bool any = false;
  std::vector<size_t> pick(n, 0);
  // Every n-subset of constraints, taken active.
  std::vector<size_t> comb(n);
  for (size_t i = 0; i < n; ++i) comb[i] = i;
  if (all.size() < n) return out;
  for (;;) {
    std::vector<Vec> A;
    Vec b;
    for (size_t i : comb) {
      A.push_back(all[i].first);
      b.push_back(all[i].second);
    }
    if (auto x = solve_square(A, b)) {
      bool ok = true;
      for (const auto& [a, rhs] : eqs)
        if (qdtk::dot(a, *x) != rhs) ok = false;
      for (const auto& [a, rhs] : les)
        if (qdtk::dot(a, *x) > rhs) ok = false;
      if (ok) {
        Rat val = p.objective.empty() ? Rat(0) : qdtk::dot(p.objective, *x);
        if (!any || val > out.value) out.value = val;
        any = true;
      }
    }
    // next combination
    size_t k = n;
    while (k > 0) {
      --k;
      if (++comb[k] <= all.size() - (n - k)) {
        for (size_t j = k + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        break;
      }
      if (k == 0) {
        if (any) out.status = LpStatus::Optimal;
        return out;
      }
    }
  }
}

// Exact 2-D point-in-convex-hull test via orientation predicates.
inline Rat cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline bool hull_member_2d(std::vector<Vec> pts, const Vec& x) {
  // Monotone-chain hull, then sign checks along the boundary.
  std::sort(pts.begin(), pts.end(), qdtk::lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return x == pts[0];
  std::vector<Vec> hull;
  for (int pass = 0; pass < 2; ++pass) {
    size_t start = hull.size();
    for (const Vec& q : pts) {
      while (hull.size() >= start + 2 &&
             cross(hull[hull.size() - 2], hull.back(), q) <= 0)
        hull.pop_back();
      hull.push_back(q);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.size() == 2 || (hull.size() > 2 && cross(hull[0], hull[1], hull[2]) == 0)) {
    // Degenerate (collinear): x must lie on the segment between extremes.
    Vec lo = *std::min_element(pts.begin(), pts.end(), qdtk::lex_less);
    Vec hi = *std::max_element(pts.begin(), pts.end(), qdtk::lex_less);
    if (cross(lo, hi, x) != 0) return false;
    Vec dvec = qdtk::sub(hi, lo), rel = qdtk::sub(x, lo);
    Rat len = qdtk::dot(dvec, dvec), t = qdtk::dot(rel, dvec);
    return t >= 0 && t <= len;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec& a = hull[i];
    const Vec& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, x) < 0) return false;
  }
  return true;
}

}  // namespace oracle

#endif
