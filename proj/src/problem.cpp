#include "qdtk/problem.hpp"

#include <sstream>

namespace qdtk {
namespace {

std::string fmt(const char* what, size_t idx1, const std::string& detail) {
  std::ostringstream os;
  os << what << " " << idx1 << ": " << detail;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const Problem& p) {
  std::vector<std::string> out;
  if (p.n <= 0) out.push_back("dimension must be positive");
  if (static_cast<int>(p.anchor.size()) != p.n)
    out.push_back("anchor length does not match dimension");
  if (!p.objective) out.push_back("objective missing");
  if (!out.empty()) return out;

  if (p.set_A && !p.equalities.empty())
    out.push_back(
        "set_A together with equality constraints is not supported");

  auto check_vars = [&](const ExprPtr& e, const char* what, size_t idx1) {
    if (var_count(e) > p.n)
      out.push_back(fmt(what, idx1, "refers to a variable beyond dimension"));
  };
  check_vars(p.objective, "objective", 0);
  for (size_t i = 0; i < p.equalities.size(); ++i)
    check_vars(p.equalities[i], "equality", i + 1);
  for (size_t j = 0; j < p.inequalities.size(); ++j)
    check_vars(p.inequalities[j], "inequality", j + 1);
  if (!out.empty()) return out;

  for (size_t i = 0; i < p.equalities.size(); ++i) {
    try {
      PointValue v = eval_value(p.equalities[i], p.anchor);
      if (!v.exact)
        out.push_back(fmt("equality", i + 1, "value at anchor is inexact"));
      else if (v.value != 0)
        out.push_back(fmt("equality", i + 1,
                          "anchor infeasible, value " + to_string(v.value)));
    } catch (const std::exception& ex) {
      out.push_back(fmt("equality", i + 1, ex.what()));
    }
  }
  for (size_t j = 0; j < p.inequalities.size(); ++j) {
    try {
      PointValue v = eval_value(p.inequalities[j], p.anchor);
      if (!v.exact)
        out.push_back(fmt("inequality", j + 1, "value at anchor is inexact"));
      else if (v.value > 0)
        out.push_back(fmt("inequality", j + 1,
                          "anchor infeasible, value " + to_string(v.value)));
    } catch (const std::exception& ex) {
      out.push_back(fmt("inequality", j + 1, ex.what()));
    }
  }
  if (p.set_A) {
    for (size_t k = 0; k < p.set_A->rows.size(); ++k) {
      const LpRow& r = p.set_A->rows[k];
      if (static_cast<int>(r.a.size()) != p.n) {
        out.push_back(fmt("set_A row", k + 1, "coefficient length mismatch"));
        continue;
      }
      if (dot(r.a, p.anchor) > r.b)
        out.push_back(fmt("set_A row", k + 1, "anchor outside the set"));
    }
  }
  return out;
}

std::vector<int> active_set(const Problem& p) {
  std::vector<int> act;
  for (size_t j = 0; j < p.inequalities.size(); ++j) {
    PointValue v = eval_value(p.inequalities[j], p.anchor);
    if (!v.exact)
      throw ExactnessError(
          fmt("inequality", j + 1, "activity undecidable exactly"));
    if (v.value > 0)
      throw std::runtime_error(fmt("inequality", j + 1, "anchor infeasible"));
    if (v.value == 0) act.push_back(static_cast<int>(j));
  }
  return act;
}

ProgramData differentiate(const Problem& p, const DiffOptions& opt) {
  ProgramData d;
  d.dim = p.n;
  d.objective_qd = quasidiff(p.objective, p.anchor, p.n, opt);
  for (const ExprPtr& f : p.equalities)
    d.equality_qds.push_back(quasidiff(f, p.anchor, p.n, opt));
  d.active = active_set(p);
  for (int j : d.active)
    d.inequality_qds.push_back(
        quasidiff(p.inequalities[static_cast<size_t>(j)], p.anchor, p.n, opt));
  return d;
}

}  // namespace qdtk
