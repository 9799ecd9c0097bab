#include "trop/cycle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>

namespace trop {

namespace {

// Number of displacement vectors tried before stable intersection gives up.
// Overridable through the TROP_MAX_SEED_RETRIES environment variable.
long max_seed_retries() {
  if (const char* env = std::getenv("TROP_MAX_SEED_RETRIES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 32;
}

// Rows spanning the linear hull of a cone: its rays stacked on its lineality.
IntMat span_matrix(const Cone& c) {
  IntMat m(0, c.ambient_dim);
  for (const auto& r : c.rays) m.append_row(r);
  for (size_t i = 0; i < c.lineality.rows(); ++i) m.append_row(c.lineality.row(i));
  return m;
}

IntVec negated(const IntVec& v) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// Canonical representative of the hyperplane {f = 0}: f or -f, whichever has
// a positive leading nonzero entry.  Zero vectors are returned unchanged.
IntVec hyperplane_rep(const IntVec& f) {
  for (const auto& x : f) {
    if (x > 0) return f;
    if (x < 0) return negated(f);
  }
  return f;
}

// Collects the hyperplanes cutting out a cone (facet normals and span
// equations) into a deduplicated pool.
void pool_hyperplanes(const Cone& c, std::vector<IntVec>& pool, std::set<std::string>& seen) {
  auto push = [&](const IntVec& f) {
    if (is_zero(f)) return;
    IntVec rep = hyperplane_rep(f);
    if (seen.insert(vec_to_string(rep)).second) pool.push_back(std::move(rep));
  };
  for (const auto& u : c.ineqs) push(u);
  for (size_t i = 0; i < c.eqs.rows(); ++i) push(c.eqs.row(i));
}

// Slices a cone by every hyperplane in the pool, keeping the closed pieces of
// the same dimension.  A hyperplane only cuts when the cone has generators
// strictly on both sides (or lineality crossing it); otherwise the cone lies
// in one closed halfspace and is kept whole.
std::vector<Cone> split_cone(const Cone& cone, const std::vector<IntVec>& pool) {
  std::vector<Cone> pieces = {cone};
  for (const auto& f : pool) {
    std::vector<Cone> next;
    for (const auto& p : pieces) {
      bool pos = false, neg = false;
      for (const auto& r : p.rays) {
        const int s = sign_of(dot(f, r));
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      bool crosses = pos && neg;
      for (size_t i = 0; i < p.lineality.rows() && !crosses; ++i)
        if (dot(f, p.lineality.row(i)) != 0) crosses = true;
      if (!crosses) {
        next.push_back(p);
        continue;
      }
      for (int side = 0; side < 2; ++side) {
        HRep h;
        h.ineqs = p.ineqs;
        h.ineqs.push_back(side == 0 ? f : negated(f));
        h.eqs = p.eqs;
        Cone half = cone_from_hrep(p.ambient_dim, h);
        if (half.dim == p.dim) next.push_back(std::move(half));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

}  // namespace

TropicalCycle make_cycle(size_t n, size_t k, const std::vector<std::pair<Cone, Rat>>& weighted,
                         bool check_balance) {
  if (k > n) throw DomainError("make_cycle: cycle dimension exceeds ambient dimension");
  // Merge duplicate cones and drop zero weights so that equal cycles have
  // equal supports.
  std::map<std::string, std::pair<Cone, Rat>> merged;
  for (const auto& [cone, w] : weighted) {
    if (cone.ambient_dim != n)
      throw DomainError("make_cycle: cone of ambient dimension " +
                        std::to_string(cone.ambient_dim) + " in a cycle in dimension " +
                        std::to_string(n));
    if (cone.dim != k)
      throw DomainError("make_cycle: cone of dimension " + std::to_string(cone.dim) +
                        " in a cycle of dimension " + std::to_string(k));
    auto [it, fresh] = merged.try_emplace(cone_key(cone), cone, w);
    if (!fresh) it->second.second += w;
  }
  std::map<std::string, Rat> weight_of;
  std::vector<Cone> cones;
  for (auto& [key, cw] : merged) {
    if (cw.second == 0) continue;
    weight_of.emplace(key, cw.second);
    cones.push_back(std::move(cw.first));
  }
  TropicalCycle c;
  c.ambient_dim = n;
  c.dim = k;
  c.fan = make_fan(n, cones);
  for (size_t idx : cones_of_dim(c.fan, k)) {
    auto it = weight_of.find(cone_key(c.fan.cones[idx]));
    if (it == weight_of.end()) throw DomainError("make_cycle: weight bookkeeping failure");
    c.weights.push_back(it->second);
  }
  if (c.weights.size() != weight_of.size())
    throw DomainError("make_cycle: weight bookkeeping failure");
  if (check_balance) {
    std::string why;
    if (!is_balanced(c, &why)) throw DomainError("make_cycle: " + why);
  }
  return c;
}

TropicalCycle zero_cycle(size_t n, size_t k) {
  if (k > n) throw DomainError("zero_cycle: cycle dimension exceeds ambient dimension");
  TropicalCycle c;
  c.ambient_dim = n;
  c.dim = k;
  c.fan = make_fan(n, std::vector<Cone>{});
  return c;
}

bool is_zero_cycle(const TropicalCycle& c) { return c.weights.empty(); }

std::vector<std::pair<Cone, Rat>> weighted_cones(const TropicalCycle& c) {
  std::vector<std::pair<Cone, Rat>> out;
  const auto idx = cones_of_dim(c.fan, c.dim);
  for (size_t t = 0; t < idx.size(); ++t) out.emplace_back(c.fan.cones[idx[t]], c.weights[t]);
  return out;
}

bool is_integral(const TropicalCycle& c) {
  for (const auto& w : c.weights)
    if (rat_den(w) != 1) return false;
  return true;
}

bool is_balanced(const TropicalCycle& c, std::string* why) {
  if (c.dim == 0) return true;  // no codimension-one cones to balance around
  const size_t n = c.ambient_dim;
  const auto kcones = weighted_cones(c);
  for (size_t ridx : cones_of_dim(c.fan, c.dim - 1)) {
    const Cone& rho = c.fan.cones[ridx];
    // Work in the lattice quotient by the span of rho: each cone containing
    // rho maps to a ray there, and the weighted primitive generators of those
    // rays must cancel.
    const QuotientMap q = quotient_coordinates(span_matrix(rho), n);
    RatVec sum(q.target_dim, Rat(0));
    for (const auto& [sigma, w] : kcones) {
      if (!cone_contains_cone(sigma, rho)) continue;
      const IntVec u = primitive_generator(q.apply(relative_interior_point(sigma)));
      for (size_t t = 0; t < sum.size(); ++t) sum[t] += w * Rat(u[t]);
    }
    if (!is_zero(sum)) {
      if (why)
        *why = "balance fails around the " + std::to_string(c.dim - 1) + "-dimensional cone " +
               cone_key(rho) + ": weighted primitive normal sum is " + vec_to_string(sum);
      return false;
    }
  }
  return true;
}

TropicalCycle add(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.ambient_dim != b.ambient_dim) throw DomainError("add: ambient dimension mismatch");
  if (a.dim != b.dim) throw DomainError("add: cycle dimension mismatch");
  // Overlay: split every weighted cone of both cycles by the pooled
  // hyperplanes of all of them.  Every piece is then a closed cell of one
  // global hyperplane arrangement, so the pieces fit together as a fan and
  // coinciding pieces can be merged by adding weights.
  std::vector<IntVec> pool;
  std::set<std::string> seen;
  for (const auto* c : {&a, &b})
    for (const auto& [cone, w] : weighted_cones(*c)) pool_hyperplanes(cone, pool, seen);
  std::vector<std::pair<Cone, Rat>> pieces;
  for (const auto* c : {&a, &b})
    for (const auto& [cone, w] : weighted_cones(*c))
      for (auto& piece : split_cone(cone, pool)) pieces.emplace_back(std::move(piece), w);
  // Summing cycles preserves balance, so the result needs no re-check.
  return make_cycle(a.ambient_dim, a.dim, pieces, false);
}

TropicalCycle scalar_multiply(const Rat& lambda, const TropicalCycle& c) {
  if (lambda == 0) return zero_cycle(c.ambient_dim, c.dim);
  TropicalCycle out = c;
  for (auto& w : out.weights) w *= lambda;
  return out;
}

TropicalCycle negate(const TropicalCycle& c) { return scalar_multiply(Rat(-1), c); }

bool equivalent(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.ambient_dim != b.ambient_dim) throw DomainError("equivalent: ambient dimension mismatch");
  if (a.dim != b.dim) return false;
  // Two cycles agree as weighted sets exactly when their difference has
  // empty support after cancellation.
  return is_zero_cycle(add(a, negate(b)));
}

TropicalCycle refine_by_functionals(const TropicalCycle& c, const std::vector<IntVec>& functionals) {
  std::vector<IntVec> pool;
  std::set<std::string> seen;
  for (const auto& f : functionals) {
    if (f.size() != c.ambient_dim)
      throw DomainError("refine_by_functionals: functional of wrong dimension");
    if (is_zero(f)) continue;
    IntVec rep = hyperplane_rep(f);
    if (seen.insert(vec_to_string(rep)).second) pool.push_back(std::move(rep));
  }
  std::vector<std::pair<Cone, Rat>> pieces;
  for (const auto& [cone, w] : weighted_cones(c))
    for (auto& piece : split_cone(cone, pool)) pieces.emplace_back(std::move(piece), w);
  return make_cycle(c.ambient_dim, c.dim, pieces, false);
}

TropicalCycle tropical_hypersurface(const Polytope& p) {
  const size_t n = p.ambient_dim;
  if (n == 0) throw DomainError("tropical_hypersurface: ambient dimension must be positive");
  if (p.dim != n) throw DomainError("tropical_hypersurface: polytope is not full-dimensional");
  if (!has_lattice_vertices(p))
    throw DomainError("tropical_hypersurface: polytope has non-lattice vertices");
  const Fan nf = normal_fan(p);
  std::vector<std::pair<Cone, Rat>> weighted;
  for (size_t idx : cones_of_dim(nf, n - 1)) {
    const Cone& sigma = nf.cones[idx];
    // The codimension-one normal cone is dual to an edge of the polytope;
    // its weight is the number of lattice points on that edge minus one.
    weighted.emplace_back(sigma, Rat(integral_length(dual_face(p, sigma))));
  }
  return make_cycle(n, n - 1, weighted, true);
}

namespace {

// Deterministic displacement vector for a seed: small rationals with a common
// power-of-two denominator, dense enough that some nearby seed is generic for
// any fixed pair of fans.
RatVec displacement_from_seed(size_t n, long seed) {
  std::mt19937_64 rng(static_cast<unsigned long long>(seed));
  std::uniform_int_distribution<long> num(-65535, 65535);
  RatVec a(n);
  for (size_t j = 0; j < n; ++j) a[j] = Rat(num(rng)) / Rat(65536);
  return a;
}

struct PairScan {
  bool generic = true;
  Rat value = Rat(0);
  std::vector<IntersectionContribution> pairs;
};

// Scans all pairs of weighted cones of complementary dimension, intersecting
// each first cone with the displaced second one.  The displacement is generic
// when every such intersection is empty or a single point interior to both
// cones at which the spans fill the ambient space; any other outcome aborts
// the scan so the caller can move to the next seed.
PairScan scan_pairs(const std::vector<std::pair<Cone, Rat>>& as,
                    const std::vector<std::pair<Cone, Rat>>& bs, size_t n, const RatVec& a) {
  PairScan out;
  for (size_t i = 0; i < as.size(); ++i) {
    for (size_t j = 0; j < bs.size(); ++j) {
      const Cone& si = as[i].first;
      const Cone& sj = bs[j].first;
      // H-representation of si ∩ (sj + a): cone constraints <u,x> >= 0
      // become <-u,x> <= 0, and the displaced copy shifts its right-hand
      // sides by the support values of a.
      std::vector<std::pair<IntVec, Rat>> ineqs;
      std::vector<std::pair<IntVec, Rat>> eqs;
      for (const auto& u : si.ineqs) ineqs.emplace_back(negated(u), Rat(0));
      for (size_t r = 0; r < si.eqs.rows(); ++r) eqs.emplace_back(si.eqs.row(r), Rat(0));
      for (const auto& u : sj.ineqs) ineqs.emplace_back(negated(u), -dot(u, a));
      for (size_t r = 0; r < sj.eqs.rows(); ++r) {
        IntVec e = sj.eqs.row(r);
        const Rat rhs = dot(e, a);
        eqs.emplace_back(std::move(e), rhs);
      }
      std::vector<RatVec> verts;
      try {
        verts = hrep_vertices(n, ineqs, eqs);
      } catch (const DomainError&) {
        // Unbounded overlap of complementary-dimensional cones only happens
        // for special displacements; try another seed.
        out.generic = false;
        return out;
      }
      if (verts.empty()) continue;
      if (verts.size() > 1) {
        out.generic = false;
        return out;
      }
      const RatVec& pt = verts[0];
      if (!in_relative_interior(si, pt) || !in_relative_interior(sj, vec_sub(pt, a))) {
        out.generic = false;
        return out;
      }
      const IntMat bi = span_matrix(si);
      const IntMat bj = span_matrix(sj);
      IntMat stacked = bi;
      for (size_t r = 0; r < bj.rows(); ++r) stacked.append_row(bj.row(r));
      if (rank_of(stacked) != n) {
        out.generic = false;
        return out;
      }
      IntersectionContribution contrib;
      contrib.i = i;
      contrib.j = j;
      // The local multiplicity is the index of the sum of the two span
      // lattices inside the ambient lattice, times both weights.
      contrib.index = lattice_index(bi, bj);
      contrib.local = Rat(contrib.index) * as[i].second * bs[j].second;
      out.value += contrib.local;
      out.pairs.push_back(std::move(contrib));
    }
  }
  return out;
}

}  // namespace

IntersectionResult stable_intersection_number(const TropicalCycle& a, const TropicalCycle& b,
                                              long seed) {
  if (a.ambient_dim != b.ambient_dim)
    throw DomainError("stable_intersection_number: ambient dimension mismatch");
  const size_t n = a.ambient_dim;
  if (a.dim + b.dim != n)
    throw DomainError("stable_intersection_number: cycle dimensions " + std::to_string(a.dim) +
                      " and " + std::to_string(b.dim) + " are not complementary in dimension " +
                      std::to_string(n));
  std::string why;
  if (!is_balanced(a, &why))
    throw DomainError("stable_intersection_number: first cycle is unbalanced: " + why);
  if (!is_balanced(b, &why))
    throw DomainError("stable_intersection_number: second cycle is unbalanced: " + why);
  const auto as = weighted_cones(a);
  const auto bs = weighted_cones(b);
  const long retries = max_seed_retries();
  for (long attempt = 0; attempt < retries; ++attempt) {
    const long s = seed + attempt;
    PairScan scan = scan_pairs(as, bs, n, displacement_from_seed(n, s));
    if (!scan.generic) continue;
    IntersectionResult res;
    res.value = std::move(scan.value);
    res.contributing_pairs = std::move(scan.pairs);
    res.seed_used = s;
    return res;
  }
  throw DomainError("stable_intersection_number: no generic displacement among seeds " +
                    std::to_string(seed) + ".." + std::to_string(seed + retries - 1) +
                    " for cycles with " + std::to_string(as.size()) + " and " +
                    std::to_string(bs.size()) + " weighted cones");
}

namespace {

// The weighted star of a cycle around one of its cones delta, written in the
// coordinates of the lattice quotient by the span of delta.  Each weighted
// cone containing delta maps to the cone generated by the images of its
// generators; images of distinct cones can coincide, in which case their
// weights add.
TropicalCycle star_cycle(const std::vector<std::pair<Cone, Rat>>& cones, const Cone& delta,
                         const QuotientMap& q, size_t star_dim) {
  std::vector<std::pair<Cone, Rat>> images;
  for (const auto& [sigma, w] : cones) {
    if (!cone_contains_cone(sigma, delta)) continue;
    std::vector<IntVec> gens, lins;
    for (const auto& r : sigma.rays) {
      IntVec im = q.apply(r);
      if (!is_zero(im)) gens.push_back(std::move(im));
    }
    for (size_t i = 0; i < sigma.lineality.rows(); ++i) {
      IntVec im = q.apply(sigma.lineality.row(i));
      if (!is_zero(im)) lins.push_back(std::move(im));
    }
    images.emplace_back(cone_from_int_generators(q.target_dim, gens, lins), w);
  }
  // Balance of the star follows from balance of the ambient cycle; the
  // intersection routine consuming these stars re-checks it anyway.
  return make_cycle(q.target_dim, star_dim, images, false);
}

}  // namespace

TropicalCycle stable_product(const TropicalCycle& a, const TropicalCycle& b, long seed) {
  if (a.ambient_dim != b.ambient_dim) throw DomainError("stable_product: ambient dimension mismatch");
  const size_t n = a.ambient_dim;
  std::string why;
  if (!is_balanced(a, &why)) throw DomainError("stable_product: first cycle is unbalanced: " + why);
  if (!is_balanced(b, &why)) throw DomainError("stable_product: second cycle is unbalanced: " + why);
  if (a.dim + b.dim < n) return zero_cycle(n, 0);
  const size_t d = a.dim + b.dim - n;
  if (is_zero_cycle(a) || is_zero_cycle(b)) return zero_cycle(n, d);
  if (d == 0) {
    const IntersectionResult r = stable_intersection_number(a, b, seed);
    if (r.value == 0) return zero_cycle(n, 0);
    return make_cycle(n, 0, {{cone_from_int_generators(n, {}), r.value}}, true);
  }
  const auto as = weighted_cones(a);
  const auto bs = weighted_cones(b);
  const Fan common = common_refinement(a.fan, b.fan);
  std::vector<std::pair<Cone, Rat>> out;
  for (size_t didx : cones_of_dim(common, d)) {
    const Cone& delta = common.cones[didx];
    if (d == n) {
      // Full-dimensional cells of the refinement lie in a unique weighted
      // cone on each side (if any); the product weight is the product.
      auto weight_around = [&](const std::vector<std::pair<Cone, Rat>>& side) {
        for (const auto& [sigma, w] : side)
          if (cone_contains_cone(sigma, delta)) return w;
        return Rat(0);
      };
      const Rat w = weight_around(as) * weight_around(bs);
      if (w != 0) out.emplace_back(delta, w);
      continue;
    }
    // The product weight on delta is the 0-dimensional stable intersection
    // of the two stars around delta, taken in the quotient by its span.
    const QuotientMap q = quotient_coordinates(span_matrix(delta), n);
    const TropicalCycle star_a = star_cycle(as, delta, q, a.dim - d);
    if (is_zero_cycle(star_a)) continue;
    const TropicalCycle star_b = star_cycle(bs, delta, q, b.dim - d);
    if (is_zero_cycle(star_b)) continue;
    const Rat w = stable_intersection_number(star_a, star_b, seed).value;
    if (w != 0) out.emplace_back(delta, w);
  }
  return make_cycle(n, d, out, true);
}

Rat degree(const TropicalCycle& c) {
  if (c.dim != 0) throw DomainError("degree: cycle dimension is not zero");
  return c.weights.empty() ? Rat(0) : c.weights[0];
}

Rat intersection_number_of_hypersurfaces(const std::vector<Polytope>& ps, long seed) {
  if (ps.empty()) throw DomainError("intersection_number_of_hypersurfaces: no polytopes given");
  const size_t n = ps[0].ambient_dim;
  for (const auto& p : ps)
    if (p.ambient_dim != n)
      throw DomainError("intersection_number_of_hypersurfaces: ambient dimension mismatch");
  if (ps.size() != n)
    throw DomainError("intersection_number_of_hypersurfaces: " + std::to_string(ps.size()) +
                      " polytopes in ambient dimension " + std::to_string(n) +
                      "; need exactly one per dimension");
  TropicalCycle c = tropical_hypersurface(ps[0]);
  for (size_t i = 1; i < ps.size(); ++i) c = stable_product(c, tropical_hypersurface(ps[i]), seed);
  return degree(c);
}

}  // namespace trop
