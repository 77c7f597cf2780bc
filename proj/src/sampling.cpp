#include "qdtk/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qdtk {
namespace {

std::vector<double> to_d(const Vec& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Worst constraint violation at x (0 = feasible).
double residual(const Problem& p, const std::vector<double>& x) {
  double r = 0;
  for (const ExprPtr& f : p.equalities)
    r = std::max(r, std::fabs(eval_double(f, x)));
  for (const ExprPtr& g : p.inequalities)
    r = std::max(r, eval_double(g, x));
  if (p.set_A)
    for (const LpRow& row : p.set_A->rows) {
      double lhs = 0;
      for (size_t i = 0; i < x.size(); ++i) lhs += row.a[i].get_d() * x[i];
      r = std::max(r, lhs - row.b.get_d());
    }
  return std::max(r, 0.0);
}

}  // namespace

FdReport fd_dir_deriv(const ExprPtr& e, const Vec& x, const Vec& v,
                      const SamplingConfig& cfg) {
  FdReport rep;
  std::vector<double> xd = to_d(x), vd = to_d(v);
  double f0 = eval_double(e, xd);
  for (double t : cfg.ladder) {
    std::vector<double> xt = xd;
    for (size_t i = 0; i < xt.size(); ++i) xt[i] += t * vd[i];
    rep.per_step.push_back((eval_double(e, xt) - f0) / t);
  }
  rep.estimate = rep.per_step.back();
  rep.converged = true;
  for (size_t k = 2; k < rep.per_step.size(); ++k) {
    double d1 = std::fabs(rep.per_step[k - 1] - rep.per_step[k - 2]);
    double d2 = std::fabs(rep.per_step[k] - rep.per_step[k - 1]);
    if (d2 > d1 && d2 > 1e-6 * (1 + std::fabs(rep.estimate)))
      rep.converged = false;
  }
  return rep;
}

ContingentReport contingent_membership(const Problem& p, const Vec& v,
                                       const SamplingConfig& cfg) {
  ContingentReport rep;
  const int n = p.n;
  std::vector<double> anchor = to_d(p.anchor), vd = to_d(v);
  const int g = cfg.grid % 2 == 0 ? cfg.grid + 1 : cfg.grid;
  std::mt19937_64 rng(cfg.seed);

  for (double alpha : cfg.ladder) {
    std::vector<double> base(anchor);
    for (int i = 0; i < n; ++i) base[static_cast<size_t>(i)] += alpha * vd[static_cast<size_t>(i)];
    const double R = cfg.radius_factor * alpha;
    const double spacing = 2 * R / (g - 1);
    const double penalty = 1e6;

    double best_feas = std::numeric_limits<double>::infinity();
    std::vector<double> best_pt = base;
    double best_phi = std::numeric_limits<double>::infinity();

    auto consider = [&](const std::vector<double>& pt) {
      double res = residual(p, pt);
      double dd = dist(pt, base);
      if (res <= cfg.feas_tol) best_feas = std::min(best_feas, dd);
      double phi = dd + penalty * res;
      if (phi < best_phi) {
        best_phi = phi;
        best_pt = pt;
      }
    };

    if (n <= 3) {
      // Full grid centred on base (odd count, so base itself is probed).
      std::vector<int> idx(static_cast<size_t>(n), 0);
      for (;;) {
        std::vector<double> pt(base);
        for (int i = 0; i < n; ++i)
          pt[static_cast<size_t>(i)] +=
              -R + spacing * idx[static_cast<size_t>(i)];
        consider(pt);
        int k = n - 1;
        while (k >= 0 && ++idx[static_cast<size_t>(k)] == g) {
          idx[static_cast<size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    } else {
      consider(base);
      std::uniform_real_distribution<double> U(-R, R);
      for (int s = 0; s < cfg.samples * 100; ++s) {
        std::vector<double> pt(base);
        for (int i = 0; i < n; ++i) pt[static_cast<size_t>(i)] += U(rng);
        consider(pt);
      }
    }

    // Coordinate refinement from the penalty minimizer.
    double step = spacing;
    std::vector<double> cur = best_pt;
    double cur_phi = best_phi;
    while (step > R * 1e-9) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> pt = cur;
          pt[static_cast<size_t>(i)] += sgn * step;
          double res = residual(p, pt);
          double dd = dist(pt, base);
          if (res <= cfg.feas_tol) best_feas = std::min(best_feas, dd);
          double phi = dd + penalty * res;
          if (phi < cur_phi) {
            cur_phi = phi;
            cur = pt;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2;
    }

    double d_est = std::isfinite(best_feas) ? best_feas : R;
    rep.per_alpha.push_back(d_est / alpha);
  }
  rep.score = rep.per_alpha.back();
  rep.member_ish = rep.score < cfg.cone_tol;
  return rep;
}

Improvement local_improvement(const Problem& p, const SamplingConfig& cfg) {
  Improvement out;
  const int n = p.n;
  std::vector<Vec> dirs;
  if (n <= 2) {
    // Every nonzero integer direction in [-3,3]^n.
    std::vector<int> idx(static_cast<size_t>(n), -3);
    for (;;) {
      Vec dvec;
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        dvec.push_back(idx[static_cast<size_t>(i)]);
        nonzero = nonzero || idx[static_cast<size_t>(i)] != 0;
      }
      if (nonzero) dirs.push_back(dvec);
      int k = n - 1;
      while (k >= 0 && ++idx[static_cast<size_t>(k)] == 4) {
        idx[static_cast<size_t>(k)] = -3;
        --k;
      }
      if (k < 0) break;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      dirs.push_back(unit_vec(n, i));
      dirs.push_back(negate(unit_vec(n, i)));
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> U(-3, 3);
    for (int s = 0; s < cfg.samples; ++s) {
      Vec dvec;
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        int c = U(rng);
        dvec.push_back(c);
        nonzero = nonzero || c != 0;
      }
      if (nonzero) dirs.push_back(dvec);
    }
  }

  PointValue base = eval_value(p.objective, p.anchor);
  const std::vector<Rat> steps{Rat(1) / 10, Rat(1) / 100, Rat(1) / 1000};

  for (const Vec& dvec : dirs) {
    for (const Rat& t : steps) {
      Vec cand = add(p.anchor, scale(dvec, t));
      bool all_exact = true, feasible_exact = true;
      double worst = 0;
      for (const ExprPtr& f : p.equalities) {
        PointValue pv = eval_value(f, cand);
        all_exact = all_exact && pv.exact;
        if (pv.exact && pv.value != 0) feasible_exact = false;
        worst = std::max(worst, std::fabs(pv.approx));
      }
      for (const ExprPtr& gexp : p.inequalities) {
        PointValue pv = eval_value(gexp, cand);
        all_exact = all_exact && pv.exact;
        if (pv.exact && pv.value > 0) feasible_exact = false;
        worst = std::max(worst, pv.approx);
      }
      if (p.set_A)
        for (const LpRow& row : p.set_A->rows)
          if (dot(row.a, cand) > row.b) feasible_exact = false;
      PointValue val = eval_value(p.objective, cand);
      all_exact = all_exact && val.exact && base.exact;
      if (all_exact) {
        if (feasible_exact && val.value < base.value) {
          out.found = true;
          out.exact = true;
          out.point = cand;
          out.value = val.value;
          out.approx_value = val.approx;
          return out;
        }
      } else if (feasible_exact && worst <= cfg.feas_tol &&
                 val.approx < base.approx - 1e-6 * (1 + std::fabs(base.approx))) {
        out.found = true;
        out.exact = false;
        out.point = cand;
        out.approx_value = val.approx;
        return out;
      }
    }
  }
  return out;
}

std::vector<SignCheck> check_dd_witness_signs(const ProgramData& d,
                                              const std::vector<Vec>& v_list,
                                              const std::vector<Vec>& w_list,
                                              const Vec& v0) {
  std::vector<SignCheck> out;
  auto push = [&](std::string label, Rat value, char rel) {
    bool pass = rel == '<' ? value < 0 : rel == '>' ? value > 0 : value == 0;
    out.push_back({std::move(label), std::move(value), rel, pass});
  };
  const size_t m = d.equality_qds.size();
  for (size_t i = 0; i < m && i < v_list.size(); ++i)
    for (size_t k = 0; k < m; ++k)
      push("f" + std::to_string(k + 1) + "'(v" + std::to_string(i + 1) + ")",
           dir_deriv(d.equality_qds[k], v_list[i]), k == i ? '<' : '=');
  for (size_t i = 0; i < m && i < w_list.size(); ++i)
    for (size_t k = 0; k < m; ++k)
      push("f" + std::to_string(k + 1) + "'(w" + std::to_string(i + 1) + ")",
           dir_deriv(d.equality_qds[k], w_list[i]), k == i ? '>' : '=');
  for (size_t k = 0; k < m; ++k)
    push("f" + std::to_string(k + 1) + "'(v0)",
         dir_deriv(d.equality_qds[k], v0), '=');
  for (size_t j = 0; j < d.inequality_qds.size(); ++j)
    push("g" + std::to_string(d.active[j] + 1) + "'(v0)",
         dir_deriv(d.inequality_qds[j], v0), '<');
  return out;
}

}  // namespace qdtk
