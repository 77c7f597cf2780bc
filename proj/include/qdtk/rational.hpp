#ifndef QDTK_RATIONAL_HPP
#define QDTK_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace qdtk {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rat = mpq_class;
using Vec = std::vector<Rat>;

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-argument mpq_class construction does not reduce to lowest terms;
// always build ratios through this helper.
inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p" (arbitrary precision). Throws on malformed input.
Rat parse_rat(const std::string& s);

std::string to_string(const Rat& r);
std::string to_string(const Vec& v);

Rat dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
Vec negate(const Vec& a);
Vec zero_vec(int n);
Vec unit_vec(int n, int i);

bool is_zero(const Vec& v);

// Lexicographic order, used everywhere canonical ordering is needed.
bool lex_less(const Vec& a, const Vec& b);

double to_double(const Rat& r);
std::vector<double> to_double(const Vec& v);

}  // namespace qdtk

#endif
