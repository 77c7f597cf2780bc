#include "qdtk/lp.hpp"

#include <cassert>

namespace qdtk {
namespace {

// Computational form: maximize c'u s.t. A u = b, u >= 0, b >= 0.
struct Tableau {
  std::vector<Vec> A;  // m x n, kept equal to B^{-1} A by pivoting
  Vec b;               // m
  std::vector<int> basis;
  int n_cols = 0;

  int rows() const { return static_cast<int>(A.size()); }
  int cols() const { return n_cols; }

  void pivot(int r, int jc) {
    Rat piv = A[r][jc];
    assert(piv != 0);
    for (Rat& x : A[r]) x /= piv;
    b[r] /= piv;
    for (int i = 0; i < rows(); ++i) {
      if (i == r || A[i][jc] == 0) continue;
      Rat f = A[i][jc];
      for (int j = 0; j < cols(); ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    basis[r] = jc;
  }
};

enum class CoreStatus { Optimal, Unbounded };

// Primal simplex with Bland's rule (smallest entering index, smallest basic
// index on ratio ties). allowed[j] == false excludes retired artificials.
CoreStatus run_simplex(Tableau& t, const Vec& cost,
                       const std::vector<bool>& allowed) {
  const int m = t.rows(), n = t.cols();
  for (;;) {
    // Reduced costs from scratch; problems here are desk scale.
    int enter = -1;
    for (int j = 0; j < n && enter < 0; ++j) {
      if (!allowed[j]) continue;
      bool basic = false;
      for (int i = 0; i < m; ++i)
        if (t.basis[i] == j) basic = true;
      if (basic) continue;
      Rat d = cost[j];
      for (int i = 0; i < m; ++i)
        if (cost[t.basis[i]] != 0 && t.A[i][j] != 0)
          d -= cost[t.basis[i]] * t.A[i][j];
      if (d > 0) enter = j;
    }
    if (enter < 0) return CoreStatus::Optimal;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t.A[i][enter] <= 0) continue;
      Rat ratio = t.b[i] / t.A[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return CoreStatus::Unbounded;
    t.pivot(leave, enter);
  }
}

// Mapping from an original variable to nonnegative computational columns.
struct VarMap {
  enum Kind { Shifted, Reflected, Split } kind;
  int col = -1;   // u
  int col2 = -1;  // negative part, Split only
  Rat base;       // x = base + u (Shifted), x = base - u (Reflected)
};

}  // namespace

LpVerdict solve(const LpProblem& p) {
  const int n = p.n_vars;
  if (static_cast<int>(p.objective.size()) != 0 &&
      static_cast<int>(p.objective.size()) != n)
    throw DimensionError("lp: objective length mismatch");
  for (const auto& r : p.eq_rows)
    if (static_cast<int>(r.a.size()) != n)
      throw DimensionError("lp: eq row length mismatch");
  for (const auto& r : p.le_rows)
    if (static_cast<int>(r.a.size()) != n)
      throw DimensionError("lp: le row length mismatch");
  if (!p.lower.empty() && static_cast<int>(p.lower.size()) != n)
    throw DimensionError("lp: lower bounds length mismatch");
  if (!p.upper.empty() && static_cast<int>(p.upper.size()) != n)
    throw DimensionError("lp: upper bounds length mismatch");

  LpVerdict out;

  // Variable substitution to u >= 0.
  std::vector<VarMap> vmap(static_cast<size_t>(n));
  std::vector<std::pair<int, Rat>> extra_ub;  // u_col <= bound
  int ncols = 0;
  for (int i = 0; i < n; ++i) {
    std::optional<Rat> lo =
        p.lower.empty() ? std::nullopt : p.lower[static_cast<size_t>(i)];
    std::optional<Rat> hi =
        p.upper.empty() ? std::nullopt : p.upper[static_cast<size_t>(i)];
    VarMap& vm = vmap[static_cast<size_t>(i)];
    if (lo && hi && *hi < *lo) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    if (lo) {
      vm.kind = VarMap::Shifted;
      vm.base = *lo;
      vm.col = ncols++;
      if (hi) extra_ub.emplace_back(vm.col, *hi - *lo);
    } else if (hi) {
      vm.kind = VarMap::Reflected;
      vm.base = *hi;
      vm.col = ncols++;
    } else {
      vm.kind = VarMap::Split;
      vm.col = ncols++;
      vm.col2 = ncols++;
    }
  }
  const int n_struct = ncols;

  // Transform a row a'x (rel) b into coefficients over u plus adjusted rhs.
  auto transform = [&](const Vec& a, const Rat& b, Vec& coef, Rat& rhs) {
    coef.assign(static_cast<size_t>(n_struct), Rat(0));
    rhs = b;
    for (int i = 0; i < n; ++i) {
      const VarMap& vm = vmap[static_cast<size_t>(i)];
      const Rat& ai = a[static_cast<size_t>(i)];
      if (ai == 0) continue;
      switch (vm.kind) {
        case VarMap::Shifted:
          coef[static_cast<size_t>(vm.col)] += ai;
          rhs -= ai * vm.base;
          break;
        case VarMap::Reflected:
          coef[static_cast<size_t>(vm.col)] -= ai;
          rhs -= ai * vm.base;
          break;
        case VarMap::Split:
          coef[static_cast<size_t>(vm.col)] += ai;
          coef[static_cast<size_t>(vm.col2)] -= ai;
          break;
      }
    }
  };

  const int m_eq = static_cast<int>(p.eq_rows.size());
  const int m_le = static_cast<int>(p.le_rows.size()) +
                   static_cast<int>(extra_ub.size());
  const int m = m_eq + m_le;
  const int n_slack = m_le;
  const int n_total = n_struct + n_slack + m;  // + artificials

  Tableau t;
  t.n_cols = n_total;
  t.A.assign(static_cast<size_t>(m), Vec(static_cast<size_t>(n_total), Rat(0)));
  t.b.assign(static_cast<size_t>(m), Rat(0));
  t.basis.assign(static_cast<size_t>(m), -1);

  int row = 0, slack = n_struct;
  auto emit = [&](const Vec& coef, const Rat& rhs, bool with_slack) {
    for (int j = 0; j < n_struct; ++j)
      t.A[static_cast<size_t>(row)][static_cast<size_t>(j)] =
          coef[static_cast<size_t>(j)];
    Rat r = rhs;
    if (with_slack)
      t.A[static_cast<size_t>(row)][static_cast<size_t>(slack++)] = 1;
    if (r < 0) {
      for (Rat& x : t.A[static_cast<size_t>(row)]) x = -x;
      r = -r;
    }
    t.b[static_cast<size_t>(row)] = r;
    // artificial
    t.A[static_cast<size_t>(row)]
       [static_cast<size_t>(n_struct + n_slack + row)] = 1;
    t.basis[static_cast<size_t>(row)] = n_struct + n_slack + row;
    ++row;
  };

  Vec coef;
  Rat rhs;
  for (const auto& r : p.eq_rows) {
    transform(r.a, r.b, coef, rhs);
    emit(coef, rhs, false);
  }
  for (const auto& r : p.le_rows) {
    transform(r.a, r.b, coef, rhs);
    emit(coef, rhs, true);
  }
  for (const auto& [col, bound] : extra_ub) {
    coef.assign(static_cast<size_t>(n_struct), Rat(0));
    coef[static_cast<size_t>(col)] = 1;
    emit(coef, bound, true);
  }

  std::vector<bool> allowed(static_cast<size_t>(n_total), true);

  // Phase 1: drive artificials to zero.
  Vec phase1_cost(static_cast<size_t>(n_total), Rat(0));
  for (int j = n_struct + n_slack; j < n_total; ++j)
    phase1_cost[static_cast<size_t>(j)] = -1;
  run_simplex(t, phase1_cost, allowed);
  Rat infeas = 0;
  for (int i = 0; i < t.rows(); ++i)
    if (t.basis[static_cast<size_t>(i)] >= n_struct + n_slack)
      infeas += t.b[static_cast<size_t>(i)];
  if (infeas != 0) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  // Pivot basic zero-level artificials out; drop dependent rows.
  for (int i = t.rows() - 1; i >= 0; --i) {
    if (t.basis[static_cast<size_t>(i)] < n_struct + n_slack) continue;
    int jc = -1;
    for (int j = 0; j < n_struct + n_slack && jc < 0; ++j)
      if (t.A[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) jc = j;
    if (jc >= 0) {
      t.pivot(i, jc);
    } else {
      t.A.erase(t.A.begin() + i);
      t.b.erase(t.b.begin() + i);
      t.basis.erase(t.basis.begin() + i);
    }
  }
  for (int j = n_struct + n_slack; j < n_total; ++j)
    allowed[static_cast<size_t>(j)] = false;

  // Phase 2.
  Vec cost(static_cast<size_t>(n_total), Rat(0));
  if (!p.objective.empty()) {
    for (int i = 0; i < n; ++i) {
      const VarMap& vm = vmap[static_cast<size_t>(i)];
      const Rat& ci = p.objective[static_cast<size_t>(i)];
      if (ci == 0) continue;
      switch (vm.kind) {
        case VarMap::Shifted:
          cost[static_cast<size_t>(vm.col)] += ci;
          break;
        case VarMap::Reflected:
          cost[static_cast<size_t>(vm.col)] -= ci;
          break;
        case VarMap::Split:
          cost[static_cast<size_t>(vm.col)] += ci;
          cost[static_cast<size_t>(vm.col2)] -= ci;
          break;
      }
    }
  }
  if (run_simplex(t, cost, allowed) == CoreStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  Vec u(static_cast<size_t>(n_total), Rat(0));
  for (int i = 0; i < t.rows(); ++i)
    u[static_cast<size_t>(t.basis[static_cast<size_t>(i)])] =
        t.b[static_cast<size_t>(i)];

  out.status = LpStatus::Optimal;
  out.point.assign(static_cast<size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    const VarMap& vm = vmap[static_cast<size_t>(i)];
    switch (vm.kind) {
      case VarMap::Shifted:
        out.point[static_cast<size_t>(i)] =
            vm.base + u[static_cast<size_t>(vm.col)];
        break;
      case VarMap::Reflected:
        out.point[static_cast<size_t>(i)] =
            vm.base - u[static_cast<size_t>(vm.col)];
        break;
      case VarMap::Split:
        out.point[static_cast<size_t>(i)] =
            u[static_cast<size_t>(vm.col)] - u[static_cast<size_t>(vm.col2)];
        break;
    }
  }
  out.value = p.objective.empty() ? Rat(0) : dot(p.objective, out.point);
  return out;
}

Feasibility feasible(const std::vector<LpRow>& eq_rows,
                     const std::vector<LpRow>& le_rows, int n_vars,
                     const std::vector<std::optional<Rat>>& lower,
                     const std::vector<std::optional<Rat>>& upper) {
  LpProblem p;
  p.n_vars = n_vars;
  p.eq_rows = eq_rows;
  p.le_rows = le_rows;
  p.lower = lower;
  p.upper = upper;
  LpVerdict v = solve(p);
  Feasibility f;
  if (v.status == LpStatus::Optimal) {
    f.feasible = true;
    f.point = v.point;
  }
  return f;
}

}  // namespace qdtk
