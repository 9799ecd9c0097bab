#pragma once

// Rational polyhedral fans: face-closed, deduplicated cone collections with
// validated pairwise intersections, common refinements, star quotients and
// completeness / coverage predicates.

#include "trop/cone.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trop {

struct Fan {
  size_t ambient_dim = 0;
  std::vector<Cone> cones;  // face-closed, deduplicated, sorted canonically
};

// Closes the given cones under faces, deduplicates and sorts.  With validate
// set, checks the fan axiom (the intersection of any two cones is a face of
// each) and throws DomainError on violation.
Fan make_fan(size_t n, const std::vector<Cone>& cones, bool validate = true);

bool fan_is_valid(const Fan& f, std::string* why = nullptr);

// Index of the canonical equal cone, if present.
std::optional<size_t> find_cone(const Fan& f, const Cone& c);

// Cones not properly contained in any other cone of the fan.
std::vector<size_t> maximal_cone_indices(const Fan& f);

// All cones of the given dimension.
std::vector<size_t> cones_of_dim(const Fan& f, size_t d);

// Fan of all pairwise intersections; its support is |a| intersect |b|.
Fan common_refinement(const Fan& a, const Fan& b);

// Fan in R^(n-d) formed by the images under q of all cones containing delta,
// where q is the canonical quotient map by span(delta) (d = dim delta < n).
// delta must be a cone of f.
Fan star_quotient(const Fan& f, const Cone& delta, const QuotientMap& q);

// Convenience wrapper computing q itself; handles dim delta = n by returning
// the trivial fan in R^0.
Fan star_quotient(const Fan& f, const Cone& delta);

// True iff the maximal cones cover R^n: the fan is pure n-dimensional and
// every (n-1)-face of a maximal cone lies in exactly two maximal cones.
bool is_complete(const Fan& f, std::string* why = nullptr);

// True iff every positively weighted cone is contained in the support of f,
// certified by exact volume accounting of bounded cross-sections.
bool fan_covers_support(const Fan& f, const std::vector<std::pair<Cone, Rat>>& weighted);

}  // namespace trop
