#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdtk/cq.hpp"
#include "qdtk/sampling.hpp"
#include "support/gen.hpp"

using namespace qdtk;

namespace {

Vec v2(long a, long b) { return Vec{Rat(a), Rat(b)}; }

Problem make_problem(int n, const std::string& objective,
                     std::vector<std::string> eqs,
                     std::vector<std::string> ineqs) {
  Problem p;
  p.n = n;
  p.anchor = Vec(static_cast<size_t>(n), Rat(0));
  p.objective = parse_expr(objective);
  for (const auto& s : eqs) p.equalities.push_back(parse_expr(s));
  for (const auto& s : ineqs) p.inequalities.push_back(parse_expr(s));
  return p;
}

}  // namespace

TEST_CASE("finite differences recover linear and kink slopes") {
  ExprPtr lin = parse_expr("3*x1 - 2*x2");
  FdReport r = fd_dir_deriv(lin, v2(0, 0), v2(1, 1));
  CHECK(r.converged);
  CHECK(r.estimate == doctest::Approx(1.0));

  ExprPtr a = parse_expr("abs(x1)");
  FdReport s = fd_dir_deriv(a, Vec{Rat(0)}, Vec{Rat(-1)});
  CHECK(s.converged);
  CHECK(s.estimate == doctest::Approx(1.0));

  ExprPtr f1 = parse_expr("max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)");
  FdReport t = fd_dir_deriv(f1, v2(0, 0), v2(1, 1));
  CHECK(t.estimate == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("finite differences agree with exact pairs on random expressions") {
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> C(-3, 3);
  const int n = 2;
  Vec zero(static_cast<size_t>(n), Rat(0));
  int checked = 0;
  while (checked < 100) {
    ExprPtr e = gen::random_expr(rng, n, 2);
    Quasidifferential q = quasidiff(e, zero, n);
    Vec v{Rat(C(rng)), Rat(C(rng))};
    if (is_zero(v)) continue;
    Rat want = dir_deriv(q, v);
    // forward differences carry an O(h * curvature) bias; push the ladder
    // low enough that the generator's coefficient range stays under 1e-4
    SamplingConfig cfg;
    cfg.ladder = {1e-4, 1e-5, 1e-6, 1e-7};
    FdReport r = fd_dir_deriv(e, zero, v, cfg);
    double scale = std::max(1.0, std::abs(to_double(want)));
    CHECK(std::abs(r.estimate - to_double(want)) / scale < 1e-4);
    ++checked;
  }
}

TEST_CASE("contingent scores vanish along true tangents") {
  Problem abs_eq = make_problem(2, "0", {"abs(x1) - x2"}, {"x1"});
  ContingentReport r = contingent_membership(abs_eq, v2(-1, 1));
  CHECK(r.member_ish);
  CHECK(r.score < 1e-6);

  Problem abs_sin = make_problem(2, "0", {"abs(sin(x1)) - abs(sin(x2))"}, {});
  ContingentReport s = contingent_membership(abs_sin, v2(1, 1));
  CHECK(s.member_ish);
  CHECK(s.score < 1e-6);
}

TEST_CASE("contingent score flags the excluded diagonal") {
  Problem p = make_problem(
      2, "0", {"max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)"}, {});
  // The constraint residual along the diagonal is ~ alpha^3/3, so feasibility
  // must be judged tighter than that cube to see the exclusion at 1e-3.
  SamplingConfig cfg;
  cfg.feas_tol = 1e-12;
  ContingentReport r = contingent_membership(p, v2(1, 1), cfg);
  REQUIRE(r.per_alpha.size() == cfg.ladder.size());
  CHECK(r.per_alpha[0] > 0.1);  // alpha = 1e-3
}

TEST_CASE("ray search finds the descent step of the min-power program") {
  Problem p = make_problem(1, "x1", {}, {"min(x1, pow(x1, 3))"});
  Improvement imp = local_improvement(p);
  REQUIRE(imp.found);
  REQUIRE(imp.exact);
  CHECK(imp.value < 0);
  // replay: the point is feasible and strictly better, all exact
  PointValue g = eval_value(p.inequalities[0], imp.point);
  REQUIRE(g.exact);
  CHECK(g.value <= 0);
  CHECK(eval_value(p.objective, imp.point).value == imp.value);
}

TEST_CASE("ray search finds the published direction family") {
  Problem p = make_problem(2, "abs(x1) - abs(x2)", {}, {"-x1 + x2"});
  Improvement imp = local_improvement(p);
  REQUIRE(imp.found);
  REQUIRE(imp.exact);
  CHECK(imp.value < 0);
  // the reported point must satisfy the constraint exactly
  PointValue g = eval_value(p.inequalities[0], imp.point);
  REQUIRE(g.exact);
  CHECK(g.value <= 0);
}

TEST_CASE("ray search respects a true minimum") {
  Problem p = make_problem(1, "pow(x1, 2)", {}, {});
  Improvement imp = local_improvement(p);
  CHECK_FALSE(imp.found);

  Problem q = make_problem(2, "abs(x1) + abs(x2)", {}, {});
  CHECK_FALSE(local_improvement(q).found);
}

TEST_CASE("witness sign patterns for the abs-equality program") {
  ProgramData d =
      differentiate(make_problem(2, "0", {"abs(x1) - x2"}, {"x1"}));
  Selection sel{{v2(-1, -1)}, {v2(0, 0)}, {v2(0, 0)}};
  auto w = check_cq(d, sel);
  REQUIRE(w.has_value());
  std::vector<Vec> vs, ws;
  for (const Witness& x : w->v_list) vs.push_back(x.v);
  for (const Witness& x : w->w_list) ws.push_back(x.v);
  std::vector<SignCheck> checks = check_dd_witness_signs(d, vs, ws, w->v0.v);
  REQUIRE_FALSE(checks.empty());
  for (const SignCheck& c : checks) {
    INFO(c.label);
    CHECK(c.pass);
    switch (c.relation) {
      case '<':
        CHECK(c.value < 0);
        break;
      case '>':
        CHECK(c.value > 0);
        break;
      default:
        CHECK(c.value == 0);
    }
  }
}

TEST_CASE("witness sign patterns reject the zero direction") {
  ProgramData d =
      differentiate(make_problem(2, "0", {"abs(x1) - x2"}, {"x1"}));
  std::vector<SignCheck> checks =
      check_dd_witness_signs(d, {v2(0, 0)}, {v2(0, 0)}, v2(0, 0));
  bool any_fail = false;
  for (const SignCheck& c : checks) any_fail = any_fail || !c.pass;
  CHECK(any_fail);
}
