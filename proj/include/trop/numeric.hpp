#pragma once

// Exact arithmetic aliases used everywhere in the library.  All geometry in
// this project is rational: floating point is deliberately absent.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace trop {

namespace mp = boost::multiprecision;

// Expression templates are switched off so that `auto` always deduces a
// value type and intermediate results behave like plain numbers.
using Int = mp::number<mp::gmp_int, mp::et_off>;
using Rat = mp::number<mp::gmp_rational, mp::et_off>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Domain violations (bad preconditions, degenerate input) are reported with
// this type; the CLI maps it to exit code 2.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& r) { return Int(numerator(r)); }
inline Int rat_den(const Rat& r) { return Int(denominator(r)); }

inline int sign_of(const Rat& r) { return r.sign(); }
inline int sign_of(const Int& n) { return n.sign(); }

// Renders "p/q", omitting "/q" for integers.  This is the one textual number
// format used in JSON documents and reports.
inline std::string rat_to_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p", "-p" or "p/q"; q must be nonzero.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    Rat r(s);
    // gmp normalises the sign into the numerator and divides out the gcd.
    if (rat_den(r) == 0) throw std::invalid_argument("zero denominator");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

inline std::string vec_to_string(const RatVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v[i]);
  }
  return out + ")";
}

inline std::string vec_to_string(const IntVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + ")";
}

}  // namespace trop
