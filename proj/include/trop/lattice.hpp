#pragma once

// Integer lattice linear algebra: Smith and Hermite normal forms, saturation
// of row lattices, primitive vectors, indices of complementary sublattices,
// and canonical quotient (factor-lattice) coordinate maps.

#include "trop/linalg.hpp"

#include <vector>

namespace trop {

struct SmithForm {
  IntMat u;  // unimodular, rows x rows
  IntMat d;  // diagonal, rows x cols, d,1 | d,2 | ... and all >= 0
  IntMat v;  // unimodular, cols x cols
};

// Decomposes m = u * d * v with u, v unimodular and d diagonal with a
// nonnegative divisibility chain.  Pivot choice: smallest absolute value,
// ties broken in row-major order, so results are deterministic.
SmithForm smith_normal_form(const IntMat& m);

// Canonical row-style Hermite normal form basis of the row lattice of m:
// echelon, positive pivots, entries above each pivot reduced into [0, pivot).
// Zero rows are dropped, so the result has rank(m) rows.  Two integer
// matrices generate the same row lattice iff their hermite bases are equal.
IntMat hermite_basis(const IntMat& m);

// Basis of the saturation span_Q(rows of m) intersect Z^n, in hermite form.
// The zero matrix yields a 0 x n result.  Idempotent.
IntMat saturate(const IntMat& m);

// Shortest integer vector on the ray spanned by v (positive multiple).
IntVec primitive_generator(const RatVec& v);
IntVec primitive_generator(const IntVec& v);

// Index of the sublattice sat(b1) + sat(b2) in Z^n, where the two saturated
// row lattices must have complementary ranks and span R^n together.
Int lattice_index(const IntMat& b1, const IntMat& b2);

// Integer right inverse s (n x r) of a surjective r x n integer matrix
// (all invariant factors 1), so m * s = identity.  Errors otherwise.
IntMat integral_right_inverse(const IntMat& m);

// Surjective lattice map q : Z^n -> Z^(n-d) whose kernel is the saturation
// of the row lattice of l (rank d).  The matrix is hermite-reduced, so equal
// input lattices give bit-identical maps.  d == n is rejected; an empty or
// zero l gives the identity.
struct QuotientMap {
  IntMat q;  // (n - d) x n
  size_t source_dim = 0;
  size_t target_dim = 0;

  IntVec apply(const IntVec& x) const;
  RatVec apply(const RatVec& x) const;
};

QuotientMap quotient_coordinates(const IntMat& l, size_t n);

}  // namespace trop
