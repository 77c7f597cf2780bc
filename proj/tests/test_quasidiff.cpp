#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdtk/quasidiff.hpp"
#include "support/gen.hpp"

using namespace qdtk;

namespace {

Vec v2(long a, long b) { return Vec{Rat(a), Rat(b)}; }

Polytope poly2(std::initializer_list<std::pair<long, long>> pts) {
  std::vector<Vec> vs;
  for (auto [a, b] : pts) vs.push_back(v2(a, b));
  return canonicalize(make_polytope(2, std::move(vs)));
}

Polytope poly1(std::initializer_list<long> pts) {
  std::vector<Vec> vs;
  for (long a : pts) vs.push_back(Vec{Rat(a)});
  return canonicalize(make_polytope(1, std::move(vs)));
}

Quasidifferential qd_at_zero(const std::string& text, int dim) {
  return quasidiff(parse_expr(text), Vec(static_cast<size_t>(dim), Rat(0)),
                   dim);
}

}  // namespace

TEST_CASE("abs minus coordinate") {
  Quasidifferential q = qd_at_zero("abs(x1) - x2", 2);
  CHECK(q.sub == poly2({{1, -1}, {-1, -1}}));
  CHECK(q.sup == poly2({{0, 0}}));
}

TEST_CASE("difference of abs-sin terms") {
  Quasidifferential q = qd_at_zero("abs(sin(x1)) - abs(sin(x2))", 2);
  CHECK(q.sub == poly2({{1, 0}, {-1, 0}}));
  CHECK(q.sup == poly2({{0, 1}, {0, -1}}));
  CHECK(qd_sum_set(q) == poly2({{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}));
}

TEST_CASE("min of identity and cube") {
  Quasidifferential q = qd_at_zero("min(x1, pow(x1, 3))", 1);
  CHECK(q.sub == poly1({0}));
  CHECK(q.sup == poly1({0, 1}));
}

TEST_CASE("min of identity and cube away from zero is smooth") {
  ExprPtr e = parse_expr("min(x1, pow(x1, 3))");
  Quasidifferential q = quasidiff(e, Vec{Rat(2)}, 1);  // min(2,8) = 2
  CHECK(q.sub == poly1({1}));
  CHECK(q.sup == poly1({0}));
  Quasidifferential r = quasidiff(e, Vec{Rat(-2)}, 1);  // min(-2,-8) = -8
  CHECK(r.sub == make_polytope(1, {Vec{Rat(12)}}));
  CHECK(r.sup == poly1({0}));
}

TEST_CASE("difference of absolute values") {
  Quasidifferential q = qd_at_zero("abs(x1) - abs(x2)", 2);
  CHECK(q.sub == poly2({{1, 0}, {-1, 0}}));
  CHECK(q.sup == poly2({{0, 1}, {0, -1}}));
}

TEST_CASE("max plus min composite") {
  Quasidifferential q = qd_at_zero("max(2*x1, 2*x2) + min(0, -x1 - x2)", 2);
  CHECK(q.sub == poly2({{2, 0}, {0, 2}}));
  CHECK(q.sup == poly2({{0, 0}, {-1, -1}}));
}

TEST_CASE("max of sin-sum and zero plus min composite") {
  Quasidifferential q =
      qd_at_zero("max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)", 2);
  CHECK(q.sub == poly2({{1, 1}, {0, 0}}));
  CHECK(q.sup == poly2({{-1, -1}, {1, 0}}));
}

TEST_CASE("max of abs terms plus min composite") {
  Quasidifferential q =
      qd_at_zero("max(abs(x2), abs(x2) - 2*x1) + min(x1, 2*x2)", 2);
  CHECK(q.sub == poly2({{0, 1}, {0, -1}, {-2, 1}, {-2, -1}}));
  CHECK(q.sup == poly2({{1, 0}, {0, 2}}));
}

TEST_CASE("directional derivative examples") {
  Quasidifferential f1 =
      qd_at_zero("max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)", 2);
  CHECK(dir_deriv(f1, v2(1, 1)) == 0);
  CHECK(dir_deriv(f1, v2(0, 0)) == 0);
  CHECK(dir_deriv(f1, v2(-1, -1)) == -1);

  Quasidifferential g = qd_at_zero("abs(x1) - x2", 2);
  CHECK(dir_deriv(g, v2(-1, 1)) == 0);
  CHECK(dir_deriv(g, v2(1, 0)) == 1);
  CHECK(dir_deriv(g, v2(0, 1)) == -1);

  Quasidifferential m = qd_at_zero("min(x1, pow(x1, 3))", 1);
  CHECK(dir_deriv(m, Vec{Rat(1)}) == 0);
  CHECK(dir_deriv(m, Vec{Rat(-1)}) == -1);

  Quasidifferential a = qd_at_zero("abs(x1)", 1);
  CHECK(dir_deriv(a, Vec{Rat(1)}) == 1);
  CHECK(dir_deriv(a, Vec{Rat(-1)}) == 1);
}

TEST_CASE("exactness errors away from symbolic anchors") {
  CHECK_THROWS_AS(quasidiff(parse_expr("sin(x1)"), Vec{Rat(1)}, 1),
                  ExactnessError);
  CHECK_THROWS_AS(
      quasidiff(parse_expr("max(sin(x1), 0)"), Vec{Rat(2)}, 1),
      ExactnessError);
  // lenient mode decides activity numerically instead
  DiffOptions lenient;
  lenient.lenient = true;
  Quasidifferential q =
      quasidiff(parse_expr("max(x1, sin(x1))"), Vec{Rat(2)}, 1, lenient);
  CHECK(q.sub == poly1({1}));  // x1 > sin(x1) at 2
}

TEST_CASE("shift-pair equivalence leaves directional derivatives alone") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> C(-4, 4), NP(1, 3);
  const int n = 2;
  std::vector<ExprPtr> pool;
  for (int i = 0; i < 10; ++i) pool.push_back(gen::random_expr(rng, n, 2));
  Vec zero(static_cast<size_t>(n), Rat(0));
  int done = 0;
  for (int trial = 0; done < 200; ++trial) {
    const ExprPtr& e = pool[static_cast<size_t>(trial) % pool.size()];
    Quasidifferential q = quasidiff(e, zero, n);
    std::vector<Vec> pts;
    int k = NP(rng);
    for (int i = 0; i < k; ++i) pts.push_back(Vec{Rat(C(rng)), Rat(C(rng))});
    Polytope shift = make_polytope(n, pts);
    Quasidifferential shifted = shift_pair(q, shift);
    for (int d = 0; d < 50; ++d) {
      Vec v{Rat(C(rng)), Rat(C(rng))};
      CHECK(dir_deriv(shifted, v) == dir_deriv(q, v));
    }
    ++done;
  }
}

TEST_CASE("calculus consistency on random pairs") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> C(-4, 4);
  const int n = 2;
  Vec zero(static_cast<size_t>(n), Rat(0));
  for (int trial = 0; trial < 60; ++trial) {
    ExprPtr a = gen::random_expr(rng, n, 2);
    ExprPtr b = gen::random_expr(rng, n, 2);
    Quasidifferential qa = quasidiff(a, zero, n);
    Quasidifferential qb = quasidiff(b, zero, n);
    Quasidifferential qsum = quasidiff(make_add(a, b), zero, n);
    Quasidifferential qneg = quasidiff(make_neg(a), zero, n);
    Quasidifferential qmax = quasidiff(make_max({a, b}), zero, n);
    Quasidifferential qmin = quasidiff(make_min({a, b}), zero, n);
    for (int d = 0; d < 12; ++d) {
      Vec v{Rat(C(rng)), Rat(C(rng))};
      Rat da = dir_deriv(qa, v), db = dir_deriv(qb, v);
      CHECK(dir_deriv(qsum, v) == da + db);
      CHECK(dir_deriv(qneg, v) == -da);
      // at the origin both operands are active (all atoms vanish there)
      CHECK(dir_deriv(qmax, v) == std::max(da, db));
      CHECK(dir_deriv(qmin, v) == std::min(da, db));
      // positive homogeneity
      CHECK(dir_deriv(qa, scale(v, Rat(3, 2))) == Rat(3, 2) * da);
      CHECK(dir_deriv(qa, zero_vec(n)) == 0);
    }
  }
}

TEST_CASE("scalar multiple flips the pair for negative factors") {
  ExprPtr e = parse_expr("abs(x1)");
  Quasidifferential q = quasidiff(make_smul(Rat(-2), e), Vec{Rat(0)}, 1);
  CHECK(q.sub == poly1({0}));
  CHECK(q.sup == poly1({-2, 2}));
  for (long v : {-3L, -1L, 1L, 2L}) {
    CHECK(dir_deriv(q, Vec{Rat(v)}) ==
          -2 * dir_deriv(quasidiff(e, Vec{Rat(0)}, 1), Vec{Rat(v)}));
  }
}
