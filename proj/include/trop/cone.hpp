#pragma once

// Rational polyhedral cones with exact double description.  Every cone keeps
// both a generator description (canonical primitive extreme-ray
// representatives modulo the lineality space) and a facet description
// (inequalities modulo the span equations), so containment, intersection and
// face queries are exact and cheap.  Enumeration is by tight subsets of
// inequality rows, which is entirely adequate at desk scale.

#include "trop/lattice.hpp"

#include <string>
#include <vector>

namespace trop {

// { x : <a, x> >= 0 for each inequality row a, <e, x> = 0 for each eqs row }
struct HRep {
  std::vector<IntVec> ineqs;
  IntMat eqs;
};

struct Cone {
  size_t ambient_dim = 0;
  // canonical V-description: primitive extreme-ray representatives reduced
  // modulo the lineality space, sorted; lineality is a saturated hermite basis
  std::vector<IntVec> rays;
  IntMat lineality;
  size_t dim = 0;
  // canonical H-description: facet inequalities (primitive representatives
  // modulo span(cone)^perp, sorted) plus the hermite basis of span(cone)^perp
  std::vector<IntVec> ineqs;
  IntMat eqs;

  // rays + lineality determine the cone, and both are canonical forms
  bool operator==(const Cone& o) const {
    return ambient_dim == o.ambient_dim && rays == o.rays && lineality == o.lineality;
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }
};

// Extreme rays of an H-represented cone as canonical representatives modulo
// its lineality space; the lineality basis is returned through the pointer.
std::vector<IntVec> extreme_rays(const HRep& h, size_t n, IntMat* lineality_out);

// Canonicalizing constructors.  Generators may be redundant, non-primitive,
// or hide lineality (opposite rays); all of that is normalised away.
Cone cone_from_generators(size_t n, const std::vector<RatVec>& gens,
                          const std::vector<RatVec>& lin_gens = {});
Cone cone_from_int_generators(size_t n, const std::vector<IntVec>& gens,
                              const std::vector<IntVec>& lin_gens = {});
Cone cone_from_hrep(size_t n, const HRep& h);

bool cone_contains(const Cone& c, const RatVec& x);
bool cone_contains(const Cone& c, const IntVec& x);
bool cone_contains_cone(const Cone& outer, const Cone& inner);

// Membership in the relative interior: all facet inequalities strict.
bool in_relative_interior(const Cone& c, const RatVec& x);

Cone cone_intersection(const Cone& a, const Cone& b);

// Deterministic rational point of relint(c): the sum of the canonical rays
// (zero for a subspace).  The zero cone is rejected.
RatVec relative_interior_point(const Cone& c);

// All faces of c, the cone itself and its minimal face included,
// deduplicated canonically.  Faces of a cone always contain its lineality.
std::vector<Cone> faces_of_cone(const Cone& c);

bool is_zero_cone(const Cone& c);

// Stable serialisation of the canonical form; doubles as a map key.
std::string cone_key(const Cone& c);

// Total order: by dimension, then by key.
bool cone_less(const Cone& a, const Cone& b);

}  // namespace trop
