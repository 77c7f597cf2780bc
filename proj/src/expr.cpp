#include "qdtk/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>

namespace qdtk {
namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

Rat affine_at(const AffineForm& a, const Vec& x) {
  if (a.coeffs.size() > x.size())
    throw DimensionError("affine argument refers to a missing variable");
  Rat v = a.offset;
  for (size_t i = 0; i < a.coeffs.size(); ++i) v += a.coeffs[i] * x[i];
  return v;
}

double affine_at(const AffineForm& a, const std::vector<double>& x) {
  if (a.coeffs.size() > x.size())
    throw DimensionError("affine argument refers to a missing variable");
  double v = a.offset.get_d();
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    v += a.coeffs[i].get_d() * x[i];
  return v;
}

Rat rat_pow(const Rat& base, long k) {
  Rat r = 1;
  for (long i = 0; i < k; ++i) r *= base;
  return r;
}

// Folds an expression into affine form, if it is one.
std::optional<AffineForm> to_affine(const ExprPtr& e) {
  auto pad = [](Vec& v, size_t n) {
    if (v.size() < n) v.resize(n, Rat(0));
  };
  switch (e->kind) {
    case Expr::Kind::Const:
      return AffineForm{{}, e->scalar};
    case Expr::Kind::Var: {
      Vec c(static_cast<size_t>(e->var) + 1, Rat(0));
      c[static_cast<size_t>(e->var)] = 1;
      return AffineForm{std::move(c), Rat(0)};
    }
    case Expr::Kind::Affine:
      return e->affine;
    case Expr::Kind::Neg: {
      auto a = to_affine(e->args[0]);
      if (!a) return std::nullopt;
      for (Rat& c : a->coeffs) c = -c;
      a->offset = -a->offset;
      return a;
    }
    case Expr::Kind::Smul: {
      auto a = to_affine(e->args[0]);
      if (!a) return std::nullopt;
      for (Rat& c : a->coeffs) c *= e->scalar;
      a->offset *= e->scalar;
      return a;
    }
    case Expr::Kind::Add: {
      auto a = to_affine(e->args[0]);
      auto b = to_affine(e->args[1]);
      if (!a || !b) return std::nullopt;
      pad(a->coeffs, b->coeffs.size());
      pad(b->coeffs, a->coeffs.size());
      for (size_t i = 0; i < a->coeffs.size(); ++i) a->coeffs[i] += b->coeffs[i];
      a->offset += b->offset;
      return a;
    }
    case Expr::Kind::Mul: {
      auto a = to_affine(e->args[0]);
      auto b = to_affine(e->args[1]);
      if (!a || !b) return std::nullopt;
      auto constant = [](const AffineForm& f) {
        for (const Rat& c : f.coeffs)
          if (c != 0) return false;
        return true;
      };
      if (constant(*a)) std::swap(a, b);
      if (!constant(*b)) return std::nullopt;
      for (Rat& c : a->coeffs) c *= b->offset;
      a->offset *= b->offset;
      return a;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

ExprPtr make_const(const Rat& c) {
  Expr e;
  e.kind = Expr::Kind::Const;
  e.scalar = c;
  return node(std::move(e));
}

ExprPtr make_var(int index) {
  if (index < 0) throw std::runtime_error("variable index must be >= 0");
  Expr e;
  e.kind = Expr::Kind::Var;
  e.var = index;
  return node(std::move(e));
}

ExprPtr make_affine(AffineForm a) {
  Expr e;
  e.kind = Expr::Kind::Affine;
  e.affine = std::move(a);
  return node(std::move(e));
}

ExprPtr make_sin(AffineForm a) {
  Expr e;
  e.kind = Expr::Kind::Sin;
  e.affine = std::move(a);
  return node(std::move(e));
}

ExprPtr make_cos(AffineForm a) {
  Expr e;
  e.kind = Expr::Kind::Cos;
  e.affine = std::move(a);
  return node(std::move(e));
}

ExprPtr make_pow(AffineForm a, long k) {
  if (k < 1) throw std::runtime_error("pow exponent must be a positive integer");
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.affine = std::move(a);
  e.exponent = k;
  return node(std::move(e));
}

ExprPtr make_neg(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.args = {std::move(a)};
  return node(std::move(e));
}

ExprPtr make_abs(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Abs;
  e.args = {std::move(a)};
  return node(std::move(e));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = Expr::Kind::Add;
  e.args = {std::move(a), std::move(b)};
  return node(std::move(e));
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
  if (a->kind == Expr::Kind::Const) return make_smul(a->scalar, std::move(b));
  if (b->kind == Expr::Kind::Const) return make_smul(b->scalar, std::move(a));
  Expr e;
  e.kind = Expr::Kind::Mul;
  e.args = {std::move(a), std::move(b)};
  return node(std::move(e));
}

ExprPtr make_smul(const Rat& s, ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Smul;
  e.scalar = s;
  e.args = {std::move(a)};
  return node(std::move(e));
}

ExprPtr make_max(std::vector<ExprPtr> args) {
  if (args.empty()) throw std::runtime_error("max needs at least one operand");
  Expr e;
  e.kind = Expr::Kind::Max;
  e.args = std::move(args);
  return node(std::move(e));
}

ExprPtr make_min(std::vector<ExprPtr> args) {
  if (args.empty()) throw std::runtime_error("min needs at least one operand");
  Expr e;
  e.kind = Expr::Kind::Min;
  e.args = std::move(args);
  return node(std::move(e));
}

PointValue eval_value(const ExprPtr& e, const Vec& x) {
  auto exact = [](Rat v) {
    PointValue p;
    p.approx = v.get_d();
    p.value = std::move(v);
    p.exact = true;
    return p;
  };
  switch (e->kind) {
    case Expr::Kind::Const:
      return exact(e->scalar);
    case Expr::Kind::Var:
      if (static_cast<size_t>(e->var) >= x.size())
        throw DimensionError("variable index out of range");
      return exact(x[static_cast<size_t>(e->var)]);
    case Expr::Kind::Affine:
      return exact(affine_at(e->affine, x));
    case Expr::Kind::Sin: {
      Rat a = affine_at(e->affine, x);
      if (a == 0) return exact(Rat(0));
      PointValue p;
      p.exact = false;
      p.approx = std::sin(a.get_d());
      return p;
    }
    case Expr::Kind::Cos: {
      Rat a = affine_at(e->affine, x);
      if (a == 0) return exact(Rat(1));
      PointValue p;
      p.exact = false;
      p.approx = std::cos(a.get_d());
      return p;
    }
    case Expr::Kind::Pow:
      return exact(rat_pow(affine_at(e->affine, x), e->exponent));
    case Expr::Kind::Neg: {
      PointValue p = eval_value(e->args[0], x);
      p.value = -p.value;
      p.approx = -p.approx;
      return p;
    }
    case Expr::Kind::Abs: {
      PointValue p = eval_value(e->args[0], x);
      p.value = abs(p.value);
      p.approx = std::fabs(p.approx);
      return p;
    }
    case Expr::Kind::Smul: {
      PointValue p = eval_value(e->args[0], x);
      p.value *= e->scalar;
      p.approx *= e->scalar.get_d();
      return p;
    }
    case Expr::Kind::Add: {
      PointValue a = eval_value(e->args[0], x);
      PointValue b = eval_value(e->args[1], x);
      PointValue p;
      p.exact = a.exact && b.exact;
      if (p.exact) p.value = a.value + b.value;
      p.approx = a.approx + b.approx;
      return p;
    }
    case Expr::Kind::Mul: {
      PointValue a = eval_value(e->args[0], x);
      PointValue b = eval_value(e->args[1], x);
      PointValue p;
      p.exact = a.exact && b.exact;
      if (p.exact) p.value = a.value * b.value;
      p.approx = a.approx * b.approx;
      return p;
    }
    case Expr::Kind::Max:
    case Expr::Kind::Min: {
      const bool is_max = e->kind == Expr::Kind::Max;
      std::vector<PointValue> vals;
      vals.reserve(e->args.size());
      bool all_exact = true;
      for (const ExprPtr& a : e->args) {
        vals.push_back(eval_value(a, x));
        all_exact = all_exact && vals.back().exact;
      }
      PointValue best = vals[0];
      for (size_t i = 1; i < vals.size(); ++i) {
        bool better = all_exact
                          ? (is_max ? vals[i].value > best.value
                                    : vals[i].value < best.value)
                          : (is_max ? vals[i].approx > best.approx
                                    : vals[i].approx < best.approx);
        if (better) best = vals[i];
      }
      best.exact = all_exact;
      return best;
    }
  }
  throw std::logic_error("eval_value: unknown node");
}

double eval_double(const ExprPtr& e, const std::vector<double>& x) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return e->scalar.get_d();
    case Expr::Kind::Var:
      if (static_cast<size_t>(e->var) >= x.size())
        throw DimensionError("variable index out of range");
      return x[static_cast<size_t>(e->var)];
    case Expr::Kind::Affine:
      return affine_at(e->affine, x);
    case Expr::Kind::Sin:
      return std::sin(affine_at(e->affine, x));
    case Expr::Kind::Cos:
      return std::cos(affine_at(e->affine, x));
    case Expr::Kind::Pow:
      return std::pow(affine_at(e->affine, x), static_cast<double>(e->exponent));
    case Expr::Kind::Neg:
      return -eval_double(e->args[0], x);
    case Expr::Kind::Abs:
      return std::fabs(eval_double(e->args[0], x));
    case Expr::Kind::Smul:
      return e->scalar.get_d() * eval_double(e->args[0], x);
    case Expr::Kind::Add:
      return eval_double(e->args[0], x) + eval_double(e->args[1], x);
    case Expr::Kind::Mul:
      return eval_double(e->args[0], x) * eval_double(e->args[1], x);
    case Expr::Kind::Max: {
      double m = eval_double(e->args[0], x);
      for (size_t i = 1; i < e->args.size(); ++i)
        m = std::max(m, eval_double(e->args[i], x));
      return m;
    }
    case Expr::Kind::Min: {
      double m = eval_double(e->args[0], x);
      for (size_t i = 1; i < e->args.size(); ++i)
        m = std::min(m, eval_double(e->args[i], x));
      return m;
    }
  }
  throw std::logic_error("eval_double: unknown node");
}

int var_count(const ExprPtr& e) {
  int n = 0;
  switch (e->kind) {
    case Expr::Kind::Var:
      return e->var + 1;
    case Expr::Kind::Affine:
    case Expr::Kind::Sin:
    case Expr::Kind::Cos:
    case Expr::Kind::Pow:
      return static_cast<int>(e->affine.coeffs.size());
    default:
      for (const ExprPtr& a : e->args) n = std::max(n, var_count(a));
      return n;
  }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }

  bool peek_char(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }

  std::string integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected integer", pos);
    return s.substr(start, pos - start);
  }

  Rat rational_literal() {
    std::string num = integer();
    if (peek_char('/')) {
      ++pos;
      std::string den = integer();
      return parse_rat(num + "/" + den);
    }
    return parse_rat(num);
  }

  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }

  AffineForm affine_argument() {
    size_t at = pos;
    ExprPtr arg = expr();
    auto a = to_affine(arg);
    if (!a)
      throw ParseError("sin/cos/pow argument must be affine", at);
    return *a;
  }

  ExprPtr primary() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (isdigit(static_cast<unsigned char>(c))) return make_const(rational_literal());
    if (isalpha(static_cast<unsigned char>(c))) {
      std::string name = ident();
      if (name.size() >= 2 && name[0] == 'x' &&
          std::all_of(name.begin() + 1, name.end(), [](char d) {
            return isdigit(static_cast<unsigned char>(d));
          })) {
        int idx = std::stoi(name.substr(1));
        if (idx < 1) throw ParseError("variables are numbered from x1", pos);
        return make_var(idx - 1);
      }
      expect('(');
      if (name == "abs") {
        ExprPtr a = expr();
        expect(')');
        return make_abs(std::move(a));
      }
      if (name == "sin" || name == "cos") {
        AffineForm a = affine_argument();
        expect(')');
        return name == "sin" ? make_sin(std::move(a)) : make_cos(std::move(a));
      }
      if (name == "pow") {
        AffineForm a = affine_argument();
        expect(',');
        size_t kat = pos;
        std::string k = integer();
        long kv = std::stol(k);
        if (kv < 1) throw ParseError("pow exponent must be >= 1", kat);
        expect(')');
        return make_pow(std::move(a), kv);
      }
      if (name == "max" || name == "min") {
        std::vector<ExprPtr> args;
        args.push_back(expr());
        while (eat(',')) args.push_back(expr());
        expect(')');
        return name == "max" ? make_max(std::move(args))
                             : make_min(std::move(args));
      }
      throw ParseError("unknown function '" + name + "'", pos);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  ExprPtr unary() {
    if (eat('-')) return make_neg(unary());
    if (eat('+')) return unary();
    return primary();
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (eat('*')) e = make_mul(std::move(e), unary());
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+'))
        e = make_add(std::move(e), term());
      else if (eat('-'))
        e = make_add(std::move(e), make_neg(term()));
      else
        return e;
    }
  }
};

std::string affine_str(const AffineForm& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    if (!first) os << " + ";
    os << a.coeffs[i].get_str() << "*x" << (i + 1);
    first = false;
  }
  if (a.offset != 0 || first) {
    if (!first) os << " + ";
    os << a.offset.get_str();
  }
  return os.str();
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.expr();
  p.skip();
  if (p.pos != text.size())
    throw ParseError("trailing input", p.pos);
  return e;
}

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  switch (e->kind) {
    case Expr::Kind::Const:
      os << e->scalar.get_str();
      break;
    case Expr::Kind::Var:
      os << "x" << (e->var + 1);
      break;
    case Expr::Kind::Affine:
      os << "(" << affine_str(e->affine) << ")";
      break;
    case Expr::Kind::Sin:
      os << "sin(" << affine_str(e->affine) << ")";
      break;
    case Expr::Kind::Cos:
      os << "cos(" << affine_str(e->affine) << ")";
      break;
    case Expr::Kind::Pow:
      os << "pow(" << affine_str(e->affine) << ", " << e->exponent << ")";
      break;
    case Expr::Kind::Neg:
      os << "-(" << to_string(e->args[0]) << ")";
      break;
    case Expr::Kind::Abs:
      os << "abs(" << to_string(e->args[0]) << ")";
      break;
    case Expr::Kind::Smul:
      os << e->scalar.get_str() << "*(" << to_string(e->args[0]) << ")";
      break;
    case Expr::Kind::Add:
      os << "(" << to_string(e->args[0]) << " + " << to_string(e->args[1])
         << ")";
      break;
    case Expr::Kind::Mul:
      os << "(" << to_string(e->args[0]) << ")*(" << to_string(e->args[1])
         << ")";
      break;
    case Expr::Kind::Max:
    case Expr::Kind::Min:
      os << (e->kind == Expr::Kind::Max ? "max(" : "min(");
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        os << to_string(e->args[i]);
      }
      os << ")";
      break;
  }
  return os.str();
}

}  // namespace qdtk
