#pragma once

// Rational convex polytopes: hulls, exact volumes, Minkowski sums, mixed
// volumes, support functions, normal fans and their dual faces.
//
// Hulls are computed by homogenization: conv(points) is the slice t = 1 of the
// cone over {(v, 1)}, so the cone machinery supplies vertices (extreme rays)
// and facets (cone facets) in canonical form, including lower-dimensional
// hulls (recorded by affine equations).

#include "trop/fan.hpp"

#include <utility>
#include <vector>

namespace trop {

struct Polytope {
  size_t ambient_dim = 0;
  // Extreme points only, sorted lexicographically.
  std::vector<RatVec> vertices;
  // Facet inequalities <x, normal> <= offset, normal primitive outward,
  // tight on a (dim-1)-dimensional face. Empty for points.
  std::vector<std::pair<IntVec, Rat>> facets;
  // Affine hull as equations <x, a> = b with a primitive; empty iff
  // the polytope is full-dimensional.
  std::vector<std::pair<IntVec, Rat>> affine_eqs;
  size_t dim = 0;
};

// A face of a polytope, recorded by the vertices of the parent it contains.
struct Face {
  size_t dim = 0;
  std::vector<size_t> vertex_indices;  // into the parent's vertex list
  std::vector<RatVec> vertices;
  // Lattice basis (saturated, hermite rows) of the direction space of the
  // affine hull of the face.
  IntMat span;
};

// Hull of a nonempty list of equal-dimension rational points.
Polytope convex_hull(const std::vector<RatVec>& points);

// Exact Euclidean volume; 0 when dim P < ambient dimension.
Rat volume(const Polytope& p);

// Hull of pairwise vertex sums.
Polytope minkowski_sum(const Polytope& p, const Polytope& q);

// Mixed volume of n polytopes in R^n, normalized so MV(P,...,P) = volume(P),
// via inclusion-exclusion over Minkowski sums of subsets.
Rat mixed_volume(const std::vector<Polytope>& ps);

// max over P of <x, u>; u must be nonzero.
Rat support_value(const Polytope& p, const IntVec& u);
Rat support_value(const Polytope& p, const RatVec& u);

// Complete fan of vertex normal cones; requires dim P = ambient dimension.
Fan normal_fan(const Polytope& p);

// The face of P on which <., u> is maximal for u in the relative interior of
// sigma; the zero cone yields P itself (as a face).
Face dual_face(const Polytope& p, const Cone& sigma);

// Number of primitive lattice steps along an edge with lattice endpoints.
Int integral_length(const Face& edge);

// True iff every vertex coordinate is an integer.
bool has_lattice_vertices(const Polytope& p);

// Vertices of { x : <a, x> <= b for (a, b) in ineqs, <e, x> = f for (e, f)
// in eqs }, by homogenizing to a cone in R^{n+1}. Returns the empty list for
// an empty solution set; throws DomainError if the set is unbounded.
std::vector<RatVec> hrep_vertices(size_t n,
                                  const std::vector<std::pair<IntVec, Rat>>& ineqs,
                                  const std::vector<std::pair<IntVec, Rat>>& eqs);

}  // namespace trop
