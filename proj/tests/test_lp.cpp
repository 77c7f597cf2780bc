#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdtk/lp.hpp"
#include "support/oracles.hpp"

using namespace qdtk;

namespace {

LpRow row(std::vector<long> a, long b) {
  LpRow r;
  for (long x : a) r.a.push_back(Rat(x));
  r.b = b;
  return r;
}

}  // namespace

TEST_CASE("one-variable box") {
  LpProblem p;
  p.n_vars = 1;
  p.objective = {Rat(1)};
  p.le_rows = {row({1}, 1)};
  p.lower = {Rat(0)};
  p.upper = {std::nullopt};
  LpVerdict v = solve(p);
  REQUIRE(v.status == LpStatus::Optimal);
  CHECK(v.point[0] == 1);
  CHECK(v.value == 1);
}

TEST_CASE("unbounded ray") {
  LpProblem p;
  p.n_vars = 1;
  p.objective = {Rat(1)};
  p.lower = {Rat(0)};
  p.upper = {std::nullopt};
  CHECK(solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("contradictory bounds are infeasible") {
  // x >= 1 and x <= 0
  LpProblem p;
  p.n_vars = 1;
  p.lower = {Rat(1)};
  p.upper = {Rat(0)};
  CHECK(solve(p).status == LpStatus::Infeasible);

  LpProblem q;
  q.n_vars = 1;
  q.le_rows = {row({-1}, -1), row({1}, 0)};
  CHECK(solve(q).status == LpStatus::Infeasible);
}

TEST_CASE("feasibility witness replays exactly") {
  std::vector<LpRow> eq = {row({1, 1}, 1)};
  std::vector<std::optional<Rat>> lo = {Rat(0), Rat(0)};
  Feasibility f = feasible(eq, {}, 2, lo);
  REQUIRE(f.feasible);
  CHECK(f.point[0] + f.point[1] == 1);
  CHECK(f.point[0] >= 0);
  CHECK(f.point[1] >= 0);
}

TEST_CASE("inconsistent equalities") {
  std::vector<LpRow> eq = {row({1}, 1), row({1}, 2)};
  CHECK_FALSE(feasible(eq, {}, 1).feasible);
}

TEST_CASE("segment through (2,0)-(0,2) misses the origin") {
  // alpha1*(2,0) + alpha2*(0,2) = 0, alpha1 + alpha2 = 1, alpha >= 0
  std::vector<LpRow> eq = {row({2, 0}, 0), row({0, 2}, 0), row({1, 1}, 1)};
  std::vector<std::optional<Rat>> lo = {Rat(0), Rat(0)};
  CHECK_FALSE(feasible(eq, {}, 2, lo).feasible);
}

TEST_CASE("degenerate redundant rows still solve") {
  LpProblem p;
  p.n_vars = 2;
  p.objective = {Rat(1), Rat(1)};
  p.eq_rows = {row({1, 1}, 1), row({2, 2}, 2)};  // dependent pair
  p.lower = {Rat(0), Rat(0)};
  p.upper = {Rat(5), Rat(5)};
  LpVerdict v = solve(p);
  REQUIRE(v.status == LpStatus::Optimal);
  CHECK(v.value == 1);
}

TEST_CASE("free variables via split encoding") {
  LpProblem p;
  p.n_vars = 2;
  p.objective = {Rat(-1), Rat(0)};
  p.eq_rows = {row({1, 1}, 0)};
  p.le_rows = {row({-1, 0}, 3)};
  LpVerdict v = solve(p);
  REQUIRE(v.status == LpStatus::Optimal);
  CHECK(v.point[0] == -3);
  CHECK(v.point[1] == 3);
  CHECK(v.value == 3);
}

TEST_CASE("oracle equivalence on random boxed LPs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> C(-3, 3), N(1, 3), R(0, 4), E(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    LpProblem p;
    p.n_vars = N(rng);
    for (int i = 0; i < p.n_vars; ++i) {
      p.objective.push_back(Rat(C(rng)));
      p.lower.push_back(Rat(-3));
      p.upper.push_back(Rat(3));
    }
    int ne = E(rng), nl = R(rng);
    for (int k = 0; k < ne; ++k) {
      LpRow r;
      for (int i = 0; i < p.n_vars; ++i) r.a.push_back(Rat(C(rng)));
      r.b = C(rng);
      p.eq_rows.push_back(std::move(r));
    }
    for (int k = 0; k < nl; ++k) {
      LpRow r;
      for (int i = 0; i < p.n_vars; ++i) r.a.push_back(Rat(C(rng)));
      r.b = C(rng);
      p.le_rows.push_back(std::move(r));
    }

    LpVerdict got = solve(p);
    oracle::LpOracleVerdict want = oracle::enumerate_lp(p);
    REQUIRE(got.status == want.status);
    if (got.status == LpStatus::Optimal) {
      CHECK(got.value == want.value);
      // replay: the returned point satisfies every constraint exactly
      for (const auto& r : p.eq_rows) CHECK(dot(r.a, got.point) == r.b);
      for (const auto& r : p.le_rows) CHECK(dot(r.a, got.point) <= r.b);
      for (int i = 0; i < p.n_vars; ++i) {
        CHECK(got.point[static_cast<size_t>(i)] >= -3);
        CHECK(got.point[static_cast<size_t>(i)] <= 3);
      }
    }
  }
}

TEST_CASE("determinism") {
  LpProblem p;
  p.n_vars = 3;
  p.objective = {Rat(1), Rat(2), Rat(-1)};
  p.le_rows = {row({1, 1, 1}, 2), row({1, -1, 0}, 1)};
  p.lower = {Rat(-2), Rat(-2), Rat(-2)};
  p.upper = {Rat(2), Rat(2), Rat(2)};
  LpVerdict a = solve(p), b = solve(p);
  REQUIRE(a.status == b.status);
  CHECK(a.point == b.point);
  CHECK(a.value == b.value);
}
