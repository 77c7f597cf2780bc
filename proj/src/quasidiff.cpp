#include "qdtk/quasidiff.hpp"

#include <cmath>

namespace qdtk {
namespace {

Vec padded_gradient(const Vec& coeffs, int dim, const Rat& factor) {
  if (static_cast<int>(coeffs.size()) > dim)
    throw DimensionError("expression refers to a variable beyond dim");
  Vec g(static_cast<size_t>(dim), Rat(0));
  for (size_t i = 0; i < coeffs.size(); ++i) g[i] = factor * coeffs[i];
  return g;
}

Quasidifferential smooth_pair(Vec grad, int dim) {
  return {singleton(std::move(grad)), singleton(zero_vec(dim))};
}

bool is_zero_singleton(const Polytope& P) {
  return P.vertices.size() == 1 && is_zero(P.vertices[0]);
}

Quasidifferential smul_pair(const Rat& lambda, const Quasidifferential& q) {
  if (lambda >= 0) return {scale(q.sub, lambda), scale(q.sup, lambda)};
  // A smooth pair (singleton sub, zero sup) stays smooth under negative
  // factors; swapping would push the gradient into the superdifferential
  // and lose the preferred representative.
  if (q.sub.vertices.size() == 1 && is_zero_singleton(q.sup))
    return {scale(q.sub, lambda), q.sup};
  return {scale(q.sup, lambda), scale(q.sub, lambda)};
}

Quasidifferential add_pair(const Quasidifferential& a,
                           const Quasidifferential& b) {
  return {minkowski_sum(a.sub, b.sub), minkowski_sum(a.sup, b.sup)};
}

// Indices of operands attaining the max (is_max) or min of the family.
std::vector<size_t> active_operands(const std::vector<ExprPtr>& args,
                                    const Vec& x, bool is_max,
                                    const DiffOptions& opt) {
  std::vector<PointValue> vals;
  vals.reserve(args.size());
  bool all_exact = true;
  for (const ExprPtr& a : args) {
    vals.push_back(eval_value(a, x));
    all_exact = all_exact && vals.back().exact;
  }
  std::vector<size_t> act;
  if (all_exact) {
    Rat best = vals[0].value;
    for (const PointValue& p : vals)
      if (is_max ? p.value > best : p.value < best) best = p.value;
    for (size_t i = 0; i < vals.size(); ++i)
      if (vals[i].value == best) act.push_back(i);
    return act;
  }
  if (!opt.lenient)
    throw ExactnessError(
        "cannot decide max/min activity exactly at this point");
  double best = vals[0].approx;
  for (const PointValue& p : vals)
    if (is_max ? p.approx > best : p.approx < best) best = p.approx;
  for (size_t i = 0; i < vals.size(); ++i)
    if (std::fabs(vals[i].approx - best) <= opt.tol) act.push_back(i);
  return act;
}

Quasidifferential max_rule(const std::vector<Quasidifferential>& qs, int dim) {
  if (qs.size() == 1) return qs[0];
  Polytope sup = qs[0].sup;
  for (size_t i = 1; i < qs.size(); ++i) sup = minkowski_sum(sup, qs[i].sup);
  std::vector<Vec> hull_pts;
  for (size_t k = 0; k < qs.size(); ++k) {
    Polytope piece = qs[k].sub;
    for (size_t i = 0; i < qs.size(); ++i)
      if (i != k) piece = minkowski_sum(piece, negate(qs[i].sup));
    hull_pts.insert(hull_pts.end(), piece.vertices.begin(),
                    piece.vertices.end());
  }
  return {convex_hull(dim, hull_pts), sup};
}

Quasidifferential min_rule(const std::vector<Quasidifferential>& qs, int dim) {
  if (qs.size() == 1) return qs[0];
  // All-smooth family: the pair [{0}, co{gradients}] realizes
  // v -> min_i <a_i, v> directly and is the preferred representative.
  bool all_smooth = true;
  for (const Quasidifferential& q : qs)
    all_smooth =
        all_smooth && q.sub.vertices.size() == 1 && is_zero_singleton(q.sup);
  if (all_smooth) {
    std::vector<Vec> grads;
    grads.reserve(qs.size());
    for (const Quasidifferential& q : qs) grads.push_back(q.sub.vertices[0]);
    return {singleton(zero_vec(dim)), convex_hull(dim, grads)};
  }
  Polytope sub = qs[0].sub;
  for (size_t i = 1; i < qs.size(); ++i) sub = minkowski_sum(sub, qs[i].sub);
  std::vector<Vec> hull_pts;
  for (size_t k = 0; k < qs.size(); ++k) {
    Polytope piece = qs[k].sup;
    for (size_t i = 0; i < qs.size(); ++i)
      if (i != k) piece = minkowski_sum(piece, negate(qs[i].sub));
    hull_pts.insert(hull_pts.end(), piece.vertices.begin(),
                    piece.vertices.end());
  }
  return {sub, convex_hull(dim, hull_pts)};
}

}  // namespace

Quasidifferential quasidiff(const ExprPtr& e, const Vec& x, int dim,
                            const DiffOptions& opt) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return smooth_pair(zero_vec(dim), dim);
    case Expr::Kind::Var: {
      if (e->var >= dim)
        throw DimensionError("variable index beyond dim");
      return smooth_pair(unit_vec(dim, e->var), dim);
    }
    case Expr::Kind::Affine:
      return smooth_pair(padded_gradient(e->affine.coeffs, dim, Rat(1)), dim);
    case Expr::Kind::Sin: {
      PointValue arg = eval_value(make_affine(e->affine), x);
      if (!arg.exact || arg.value != 0)
        throw ExactnessError("sin differentiable exactly only at argument 0");
      return smooth_pair(padded_gradient(e->affine.coeffs, dim, Rat(1)), dim);
    }
    case Expr::Kind::Cos: {
      PointValue arg = eval_value(make_affine(e->affine), x);
      if (!arg.exact || arg.value != 0)
        throw ExactnessError("cos differentiable exactly only at argument 0");
      return smooth_pair(zero_vec(dim), dim);
    }
    case Expr::Kind::Pow: {
      PointValue arg = eval_value(make_affine(e->affine), x);
      Rat factor = e->exponent;
      for (long k = 1; k < e->exponent; ++k) factor *= arg.value;
      return smooth_pair(padded_gradient(e->affine.coeffs, dim, factor), dim);
    }
    case Expr::Kind::Neg:
      return smul_pair(Rat(-1), quasidiff(e->args[0], x, dim, opt));
    case Expr::Kind::Smul:
      return smul_pair(e->scalar, quasidiff(e->args[0], x, dim, opt));
    case Expr::Kind::Add:
      return add_pair(quasidiff(e->args[0], x, dim, opt),
                      quasidiff(e->args[1], x, dim, opt));
    case Expr::Kind::Mul: {
      PointValue fa = eval_value(e->args[0], x);
      PointValue fb = eval_value(e->args[1], x);
      if (!fa.exact || !fb.exact)
        throw ExactnessError("product rule needs exact factor values");
      return add_pair(smul_pair(fa.value, quasidiff(e->args[1], x, dim, opt)),
                      smul_pair(fb.value, quasidiff(e->args[0], x, dim, opt)));
    }
    case Expr::Kind::Abs: {
      Quasidifferential q = quasidiff(e->args[0], x, dim, opt);
      PointValue v = eval_value(e->args[0], x);
      bool pos;
      if (v.exact) {
        if (v.value > 0) return q;
        if (v.value < 0) return smul_pair(Rat(-1), q);
        return max_rule({q, smul_pair(Rat(-1), q)}, dim);
      }
      if (!opt.lenient)
        throw ExactnessError("cannot decide the sign under abs exactly");
      pos = v.approx > 0;
      if (std::fabs(v.approx) <= opt.tol)
        return max_rule({q, smul_pair(Rat(-1), q)}, dim);
      return pos ? q : smul_pair(Rat(-1), q);
    }
    case Expr::Kind::Max:
    case Expr::Kind::Min: {
      const bool is_max = e->kind == Expr::Kind::Max;
      std::vector<size_t> act = active_operands(e->args, x, is_max, opt);
      std::vector<Quasidifferential> qs;
      qs.reserve(act.size());
      for (size_t i : act) qs.push_back(quasidiff(e->args[i], x, dim, opt));
      return is_max ? max_rule(qs, dim) : min_rule(qs, dim);
    }
  }
  throw std::logic_error("quasidiff: unknown node");
}

Rat dir_deriv(const Quasidifferential& q, const Vec& v) {
  return support(q.sub, v).value - support(negate(q.sup), v).value;
}

Polytope qd_sum_set(const Quasidifferential& q) {
  return minkowski_sum(q.sub, q.sup);
}

Quasidifferential shift_pair(const Quasidifferential& q, const Polytope& C) {
  return {minkowski_sum(q.sub, C), minkowski_sum(q.sup, negate(C))};
}

}  // namespace qdtk
