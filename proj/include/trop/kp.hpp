#pragma once

// The graded ring attached to a complete simplicial fan through its volume
// polynomial: exact interpolation of vol {x : <x, u_r> <= h_r} as a
// homogeneous polynomial in the ray variables, the quotient of differential
// operators by the annihilator of that polynomial, the Poincare pairing, and
// support-vector classes of polytopes.
//
// Sketch: for h in the open chamber of the fan (one vertex per maximal cone,
// strict inequalities at all other rays), the volume of P(h) is a homogeneous
// polynomial V of degree n in the m support values.  Monomial differential
// operators acting on V span a graded ring whose top pairing polarizes V, so
// pairing polytope classes recovers n! times their mixed volume.

#include "trop/polytope.hpp"

#include <map>
#include <vector>

namespace trop {

// Exponent vector over the ray variables, one entry per ray.
using Exponent = std::vector<int>;
// Homogeneous polynomial as exponent -> coefficient (zero coefficients absent).
using Poly = std::map<Exponent, Rat>;

struct VolumePolynomial {
  size_t num_rays = 0;  // m: number of rays of the fan, variable count
  size_t degree = 0;    // n: ambient dimension, degree of homogeneity
  Poly coefficients;
  RatVec chamber_reference;  // the verified reference support vector
};

struct GradedRing {
  size_t num_vars = 0;
  size_t degree = 0;  // n: top grading
  std::vector<size_t> dims;  // n + 1 graded dimensions; dims[0] == dims[n] == 1
  // Per degree k, the operator monomials (exponent vectors) chosen as a basis
  // of the degree-k graded piece: pivot columns of the action-on-P matrix in
  // graded-lex order.
  std::vector<std::vector<Exponent>> basis;
  // pairing[k] is the dims[k] x dims[n-k] matrix of constants (a.b)(P) for
  // basis operators a of degree k and b of degree n - k; full rank for all k.
  std::vector<RatMat> pairing;
  // True when every maximal cone of the originating fan is spanned by a
  // lattice basis (set by ring_of_fan; meaningless for a bare build_ring).
  bool smooth_fan = false;
};

// Exact value of a polynomial at a rational point.
Rat evaluate_poly(const Poly& p, const RatVec& x);

// The rays of a fan as primitive vectors, in the deterministic order used for
// support vectors: the order of cones_of_dim(f, 1).
std::vector<IntVec> fan_rays(const Fan& f);

// True when every maximal cone of f is full-dimensional with exactly
// ambient-dimension many rays and no lineality.
bool is_simplicial(const Fan& f);

// Exact membership test for the open chamber of a complete simplicial fan:
// true iff P(h) = {x : <x, u_r> <= h_r} has one simple vertex per maximal
// cone with every other inequality strict there, i.e. the normal fan of
// P(h) is exactly f.  Entries of h follow fan_rays order.
bool in_chamber(const Fan& f, const RatVec& h);

// The unique homogeneous degree-n polynomial in the m ray variables agreeing
// with vol P(h) near h0, P(h) = {x : <x, u_r> <= h_r}.  Computed by exact
// interpolation at C(m+n-1, n) sample points h0 + eps*t (t over nonnegative
// integer vectors of total degree n), each verified to keep h0's chamber
// combinatorics; eps is halved until all samples verify.  Requires f complete
// and simplicial and h0 in the open chamber.
VolumePolynomial volume_polynomial(const Fan& f, const RatVec& h0);

// The graded ring of monomial differential operators modulo the annihilator
// of p (homogeneous of degree n in m variables, nonzero): degree-k piece is
// the image of op -> op(p); pairing is (a.b)(p).
GradedRing build_ring(const Poly& p, size_t m, size_t n);

// Support vector of q on the rays of f: h_r = support_value(q, u_r).
// Requires the support function of q to be linear on every cone of f, i.e.
// f refines the normal fan of q; violations name the offending cone.
RatVec class_of_polytope(const Fan& f, const Polytope& q);

// Iterated directional derivative L_{h1} ... L_{hn} (V): for polytope classes
// this is n! times the mixed volume of the polytopes.  Uses V itself (not
// n!V), so the value is directly the expected intersection number.
Rat top_pairing(const Fan& f, const VolumePolynomial& v, const std::vector<RatVec>& hs);

// build_ring applied to n! * volume_polynomial(f, h0), with the smoothness
// flag filled in from the fan's maximal cones.
GradedRing ring_of_fan(const Fan& f, const RatVec& h0);

// A complete simplicial fan refining the normal fan of every polytope in qs
// (equivalently of their Minkowski sum), together with a verified chamber
// reference vector for it.  Built by perturbing the support values of the sum
// with small seeded rationals until the perturbed polytope is simple; both
// simpliciality and refinement are verified exactly, retrying with smaller
// perturbations as needed.
struct SimplicialRefinement {
  Fan fan;
  RatVec chamber_reference;
};

SimplicialRefinement simplicial_common_refinement(const std::vector<Polytope>& qs, long seed = 1);

}  // namespace trop
