#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdtk/expr.hpp"

using namespace qdtk;

TEST_CASE("eval examples") {
  Vec zero2{Rat(0), Rat(0)};

  ExprPtr e1 = parse_expr("abs(sin(x1)) - abs(sin(x2))");
  PointValue v1 = eval_value(e1, zero2);
  CHECK(v1.exact);
  CHECK(v1.value == 0);

  ExprPtr e2 = parse_expr("min(x1, pow(x1, 3))");
  PointValue v2 = eval_value(e2, Vec{Rat(0)});
  CHECK(v2.exact);
  CHECK(v2.value == 0);
  PointValue v3 = eval_value(e2, Vec{Rat(1, 2)});
  CHECK(v3.exact);
  CHECK(v3.value == Rat(1, 8));
  PointValue v4 = eval_value(e2, Vec{Rat(-2)});
  CHECK(v4.exact);
  CHECK(v4.value == -8);

  ExprPtr e3 = parse_expr("3/2");
  CHECK(eval_value(e3, zero2).value == Rat(3, 2));
}

TEST_CASE("sin and cos are exact only at argument zero") {
  ExprPtr s = parse_expr("sin(x1)");
  CHECK(eval_value(s, Vec{Rat(0)}).exact);
  CHECK(eval_value(s, Vec{Rat(0)}).value == 0);
  PointValue off = eval_value(s, Vec{Rat(1)});
  CHECK_FALSE(off.exact);
  CHECK(off.approx == doctest::Approx(std::sin(1.0)));

  ExprPtr c = parse_expr("cos(x1 - x1)");
  PointValue at1 = eval_value(c, Vec{Rat(1)});
  CHECK(at1.exact);
  CHECK(at1.value == 1);
}

TEST_CASE("max/min activity falls back to approx on inexact operands") {
  ExprPtr e = parse_expr("max(sin(x1), 0)");
  PointValue v = eval_value(e, Vec{Rat(2)});
  CHECK_FALSE(v.exact);
  CHECK(v.approx == doctest::Approx(std::sin(2.0)));
  PointValue w = eval_value(e, Vec{Rat(4)});
  CHECK_FALSE(w.exact);
  CHECK(w.approx == doctest::Approx(0.0));
}

TEST_CASE("parser accepts the concrete syntax") {
  CHECK(parse_expr("x1")->kind == Expr::Kind::Var);
  CHECK(parse_expr("-x1 + x2")->kind == Expr::Kind::Add);
  CHECK(parse_expr("max(2*x1, 2*x2) + min(0, -x1 - x2)") != nullptr);
  CHECK(parse_expr("max(abs(x2), abs(x2) - 2*x1) + min(x1, 2*x2)") != nullptr);
  CHECK(parse_expr("max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)") !=
        nullptr);
  ExprPtr p = parse_expr("pow(2*x1 - x2 + 1/3, 2)");
  CHECK(p->kind == Expr::Kind::Pow);
  CHECK(p->exponent == 2);
}

TEST_CASE("parse errors carry a position") {
  auto expect_fail = [](const std::string& text) {
    try {
      parse_expr(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.position <= text.size());
    }
  };
  expect_fail("x0");            // variables are 1-based
  expect_fail("max()");
  expect_fail("1 + ");
  expect_fail("pow(x1, 0)");    // exponent must be >= 1
  expect_fail("foo(x1)");
  expect_fail("(x1");
  expect_fail("x1 x2");
}

TEST_CASE("smooth atoms demand affine arguments") {
  CHECK_THROWS_AS(parse_expr("sin(x1 * x1)"), ParseError);
  CHECK_THROWS_AS(parse_expr("cos(abs(x1))"), ParseError);
  CHECK_THROWS_AS(parse_expr("pow(max(x1, x2), 2)"), ParseError);
  CHECK(parse_expr("sin(2*x1 - 3*x2 + 1/2)") != nullptr);
}

TEST_CASE("round-trip through to_string") {
  std::vector<std::string> samples = {
      "abs(x1) - x2",
      "x1",
      "min(x1, pow(x1, 3))",
      "abs(x1) - abs(x2)",
      "max(2*x1, 2*x2) + min(0, -x1 - x2)",
      "max(sin(x1) + sin(x2), 0) + min(-x1 - x2, x1)",
      "max(abs(x2), abs(x2) - 2*x1) + min(x1, 2*x2)",
      "abs(sin(x1)) - abs(sin(x2))",
      "3/2 * x1 - 2 * max(x1, x2, -x2)",
  };
  std::vector<Vec> probes = {
      {Rat(0), Rat(0)}, {Rat(1), Rat(2)}, {Rat(-1, 2), Rat(1, 3)},
      {Rat(2), Rat(-3)}};
  for (const std::string& s : samples) {
    ExprPtr a = parse_expr(s);
    ExprPtr b = parse_expr(to_string(a));
    // semantic identity on rational probe points
    for (const Vec& x : probes) {
      PointValue va = eval_value(a, x), vb = eval_value(b, x);
      CHECK(va.exact == vb.exact);
      if (va.exact) CHECK(va.value == vb.value);
      CHECK(va.approx == doctest::Approx(vb.approx));
    }
    // and the printed form is a fixed point
    CHECK(to_string(b) == to_string(a));
  }
}

TEST_CASE("var_count") {
  CHECK(var_count(parse_expr("1/2")) == 0);
  CHECK(var_count(parse_expr("x3")) == 3);
  CHECK(var_count(parse_expr("abs(x1) + sin(x2)")) == 2);
}

TEST_CASE("eval_double agrees with exact values") {
  ExprPtr e = parse_expr("max(abs(x2), abs(x2) - 2*x1) + min(x1, 2*x2)");
  Vec x{Rat(1, 4), Rat(-1, 3)};
  std::vector<double> xd{0.25, -1.0 / 3.0};
  PointValue pv = eval_value(e, x);
  REQUIRE(pv.exact);
  CHECK(eval_double(e, xd) == doctest::Approx(to_double(pv.value)));
}
