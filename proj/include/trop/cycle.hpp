#pragma once

// Balanced weighted rational fans ("tropical cycles") with exact rational
// weights: balance verification, addition and subdivision on common
// overlays, equivalence, tropicalization of Newton polytopes, and stable
// intersection numbers and products via generic displacement.

#include "trop/polytope.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trop {

// A k-dimensional weighted fan: the fan is the face closure of the weighted
// k-cones, and weights (all nonzero after canonicalization) run parallel to
// cones_of_dim(fan, dim).  The zero cycle keeps its (n, k) bookkeeping with
// an empty fan.
struct TropicalCycle {
  size_t ambient_dim = 0;
  size_t dim = 0;
  Fan fan;
  std::vector<Rat> weights;
};

// Canonicalizing constructor: merges duplicate cones (summing weights), drops
// zero weights, face-closes and validates the fan, and (by default) verifies
// the balance condition, throwing DomainError with the violation on failure.
TropicalCycle make_cycle(size_t n, size_t k,
                         const std::vector<std::pair<Cone, Rat>>& weighted,
                         bool check_balance = true);

TropicalCycle zero_cycle(size_t n, size_t k);
bool is_zero_cycle(const TropicalCycle& c);

// The weighted k-cones in fan order.
std::vector<std::pair<Cone, Rat>> weighted_cones(const TropicalCycle& c);

// True iff every weight is an integer (reported, never enforced).
bool is_integral(const TropicalCycle& c);

// Balance: at every (k-1)-cone rho, the weighted sum of the primitive
// generators of the images of the adjacent k-cones in the factor lattice
// Z^n / (span(rho) cap Z^n) vanishes.  On failure, *why names the first
// violating rho and the offending sum.
bool is_balanced(const TropicalCycle& c, std::string* why = nullptr);

// Sum of cycles of equal dimension: both are subdivided on their common
// overlay (every cone split by every facet and span hyperplane of the other
// cycle), matching cells merge, weights add, zero-weight cells vanish.
TropicalCycle add(const TropicalCycle& a, const TropicalCycle& b);

TropicalCycle scalar_multiply(const Rat& lambda, const TropicalCycle& c);
TropicalCycle negate(const TropicalCycle& c);

// Same cycle up to subdivision: dimensions agree and a - b has empty support.
bool equivalent(const TropicalCycle& a, const TropicalCycle& b);

// Subdivision with induced weights: every weighted cone is split by the
// hyperplanes {<f, x> = 0}; the result is equivalent to the input.
TropicalCycle refine_by_functionals(const TropicalCycle& c,
                                    const std::vector<IntVec>& functionals);

// The (n-1)-skeleton of the normal fan of a full-dimensional lattice
// polytope, each cone weighted by the lattice length of its dual edge.
TropicalCycle tropical_hypersurface(const Polytope& p);

struct IntersectionContribution {
  size_t i = 0;  // index into weighted_cones of the first cycle
  size_t j = 0;  // index into weighted_cones of the second cycle
  Int index;     // lattice index of span(sigma_i) + span(sigma_j)
  Rat local;     // index * weight_i * weight_j
};

struct IntersectionResult {
  Rat value;  // sum of the local contributions
  std::vector<IntersectionContribution> contributing_pairs;
  long seed_used = 0;  // the seed whose displacement vector was generic
};

// Intersection number of cycles of complementary dimension: displace the
// second cycle by a generic vector drawn deterministically from the seed,
// verify genericity (every incidence is a single transversal point in both
// relative interiors), and sum lattice-index-weighted products.  Retries
// nearby seeds (TROP_MAX_SEED_RETRIES, default 32) before giving up.
IntersectionResult stable_intersection_number(const TropicalCycle& a,
                                              const TropicalCycle& b, long seed);

// Stable intersection product of a k-cycle and an m-cycle: a (k+m-n)-cycle
// supported on the common refinement of the two fans, the weight of each
// cell being the intersection number of the star cycles in the factor
// lattice.  Negative target dimension gives the zero cycle; dimension zero
// routes through stable_intersection_number.
TropicalCycle stable_product(const TropicalCycle& a, const TropicalCycle& b,
                             long seed = 1);

// Weight of the origin of a 0-cycle (0 for the zero cycle).
Rat degree(const TropicalCycle& c);

// Iterated stable product of the tropical hypersurfaces of n full-dimensional
// lattice polytopes in R^n, read off as a degree.
Rat intersection_number_of_hypersurfaces(const std::vector<Polytope>& ps,
                                         long seed = 1);

}  // namespace trop
