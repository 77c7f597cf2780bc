#ifndef QDTK_EXPR_HPP
#define QDTK_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "qdtk/rational.hpp"

namespace qdtk {

// Raised when an exact activity or value decision is impossible at the
// requested point (a transcendental atom away from its symbolic anchor).
struct ExactnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Affine form c'x + offset; the only argument shape allowed under the
// smooth atoms sin/cos/pow.
struct AffineForm {
  Vec coeffs;
  Rat offset;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Const,
    Var,
    Affine,
    Sin,
    Cos,
    Pow,
    Neg,
    Abs,
    Add,
    Mul,
    Smul,
    Max,
    Min
  };

  Kind kind;
  Rat scalar;          // Const value / Smul factor
  int var = -1;        // Var index
  AffineForm affine;   // Sin/Cos/Pow argument, Affine payload
  long exponent = 0;   // Pow (positive integer)
  std::vector<ExprPtr> args;
};

ExprPtr make_const(const Rat& c);
ExprPtr make_var(int index);
ExprPtr make_affine(AffineForm a);
ExprPtr make_sin(AffineForm a);
ExprPtr make_cos(AffineForm a);
ExprPtr make_pow(AffineForm a, long k);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_abs(ExprPtr e);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_smul(const Rat& s, ExprPtr e);
ExprPtr make_max(std::vector<ExprPtr> args);
ExprPtr make_min(std::vector<ExprPtr> args);

struct PointValue {
  Rat value;           // meaningful when exact
  bool exact = false;
  double approx = 0;   // always set
};

// Exact where possible: sin/cos are symbolically known only at argument 0,
// pow is exact everywhere. Max/Min comparisons fall back to the double
// approximations when an operand is inexact.
PointValue eval_value(const ExprPtr& e, const Vec& x);

double eval_double(const ExprPtr& e, const std::vector<double>& x);

// Largest variable index + 1 appearing in e.
int var_count(const ExprPtr& e);

// Concrete syntax: infix + - *, rationals "p/q", variables x1..xn,
// abs(e), max(e,...), min(e,...), sin(affine), cos(affine), pow(affine,k).
ExprPtr parse_expr(const std::string& text);

std::string to_string(const ExprPtr& e);

}  // namespace qdtk

#endif
