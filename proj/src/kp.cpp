#include "trop/kp.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>

namespace trop {

namespace {

Rat rat_pow(const Rat& x, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Rat factorial(size_t n) {
  Rat r(1);
  for (size_t i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

// All exponent vectors over m variables of total degree k, in graded-lex
// order (first variable's exponent descending, then recursively).
void enum_exponents(size_t m, int k, Exponent& cur, std::vector<Exponent>& out) {
  if (cur.size() + 1 == m) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur.push_back(e);
    enum_exponents(m, k - e, cur, out);
    cur.pop_back();
  }
}

std::vector<Exponent> exponents_of_degree(size_t m, int k) {
  std::vector<Exponent> out;
  Exponent cur;
  cur.reserve(m);
  enum_exponents(m, k, cur, out);
  return out;
}

// ---- polynomial helpers ----------------------------------------------------

Poly derivative(const Poly& p, size_t var) {
  Poly out;
  for (const auto& [alpha, c] : p) {
    if (alpha[var] == 0) continue;
    Exponent beta = alpha;
    --beta[var];
    out[beta] += c * Rat(alpha[var]);
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Poly directional_derivative(const Poly& p, const RatVec& h) {
  Poly out;
  for (const auto& [alpha, c] : p)
    for (size_t r = 0; r < h.size(); ++r) {
      if (alpha[r] == 0 || h[r] == 0) continue;
      Exponent beta = alpha;
      --beta[r];
      out[beta] += c * Rat(alpha[r]) * h[r];
    }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Poly apply_operator(const Exponent& beta, Poly p) {
  for (size_t r = 0; r < beta.size() && !p.empty(); ++r)
    for (int i = 0; i < beta[r]; ++i) p = derivative(p, r);
  return p;
}

// ---- fan chart: rays, their indices, and per-maximal-cone ray lists --------

struct FanChart {
  std::vector<IntVec> rays;
  std::vector<std::vector<size_t>> cone_rays;  // per maximal cone
};

FanChart chart_of(const Fan& f) {
  FanChart ch;
  std::map<std::string, size_t> index;
  for (size_t idx : cones_of_dim(f, 1)) {
    const Cone& c = f.cones[idx];
    if (c.rays.size() != 1 || c.lineality.rows() != 0)
      throw DomainError("fan has a one-dimensional cone that is not a ray");
    index.emplace(vec_to_string(c.rays[0]), ch.rays.size());
    ch.rays.push_back(c.rays[0]);
  }
  for (size_t idx : maximal_cone_indices(f)) {
    const Cone& c = f.cones[idx];
    std::vector<size_t> list;
    for (const auto& r : c.rays) {
      auto it = index.find(vec_to_string(r));
      if (it == index.end()) throw DomainError("fan is missing the face closure of its rays");
      list.push_back(it->second);
    }
    ch.cone_rays.push_back(std::move(list));
  }
  return ch;
}

// Vertices of P(h) = {x : <x, u_r> <= h_r}, one per maximal cone, when h has
// the simple chamber combinatorics of the fan: the rays of each maximal cone
// pin a unique point that satisfies every other inequality strictly.
std::optional<std::vector<RatVec>> chamber_vertices(const FanChart& ch, size_t n,
                                                    const RatVec& h) {
  std::vector<RatVec> verts;
  for (const auto& idxs : ch.cone_rays) {
    if (idxs.size() != n) return std::nullopt;
    RatMat m(n, n);
    RatVec rhs(n);
    for (size_t i = 0; i < n; ++i) {
      m.set_row(i, to_rat(ch.rays[idxs[i]]));
      rhs[i] = h[idxs[i]];
    }
    const auto x = solve(m, rhs);
    if (!x) return std::nullopt;
    std::set<size_t> tight(idxs.begin(), idxs.end());
    for (size_t r = 0; r < ch.rays.size(); ++r) {
      if (tight.count(r)) continue;
      if (dot(ch.rays[r], *x) >= h[r]) return std::nullopt;
    }
    verts.push_back(*x);
  }
  return verts;
}

Rat chamber_volume(const std::vector<RatVec>& verts) { return volume(convex_hull(verts)); }

}  // namespace

Rat evaluate_poly(const Poly& p, const RatVec& x) {
  Rat s(0);
  for (const auto& [alpha, c] : p) {
    Rat term = c;
    for (size_t r = 0; r < x.size(); ++r)
      if (alpha[r] > 0) term *= rat_pow(x[r], alpha[r]);
    s += term;
  }
  return s;
}

std::vector<IntVec> fan_rays(const Fan& f) {
  std::vector<IntVec> rays;
  for (size_t idx : cones_of_dim(f, 1)) {
    const Cone& c = f.cones[idx];
    if (c.rays.size() != 1 || c.lineality.rows() != 0)
      throw DomainError("fan has a one-dimensional cone that is not a ray");
    rays.push_back(c.rays[0]);
  }
  return rays;
}

bool is_simplicial(const Fan& f) {
  for (size_t idx : maximal_cone_indices(f)) {
    const Cone& c = f.cones[idx];
    if (c.lineality.rows() != 0) return false;
    if (c.rays.size() != c.dim) return false;
    if (c.dim != f.ambient_dim) return false;
  }
  return true;
}

bool in_chamber(const Fan& f, const RatVec& h) {
  const size_t n = f.ambient_dim;
  if (n == 0) throw DomainError("in_chamber: ambient dimension must be positive");
  if (!is_complete(f)) throw DomainError("in_chamber: fan is not complete");
  if (!is_simplicial(f)) throw DomainError("in_chamber: fan is not simplicial");
  const FanChart ch = chart_of(f);
  if (h.size() != ch.rays.size())
    throw DomainError("in_chamber: support vector has " + std::to_string(h.size()) +
                      " entries for a fan with " + std::to_string(ch.rays.size()) + " rays");
  return chamber_vertices(ch, n, h).has_value();
}

VolumePolynomial volume_polynomial(const Fan& f, const RatVec& h0) {
  const size_t n = f.ambient_dim;
  if (n == 0) throw DomainError("volume_polynomial: ambient dimension must be positive");
  if (!is_complete(f)) throw DomainError("volume_polynomial: fan is not complete");
  if (!is_simplicial(f)) throw DomainError("volume_polynomial: fan is not simplicial");
  const FanChart ch = chart_of(f);
  const size_t m = ch.rays.size();
  if (h0.size() != m)
    throw DomainError("volume_polynomial: support vector has " + std::to_string(h0.size()) +
                      " entries for a fan with " + std::to_string(m) + " rays");
  if (!chamber_vertices(ch, n, h0))
    throw DomainError(
        "volume_polynomial: the reference support vector does not give one simple vertex per "
        "maximal cone; choose a different reference");

  const std::vector<Exponent> mons = exponents_of_degree(m, static_cast<int>(n));

  // Find a perturbation scale keeping every sample point h0 + eps*t inside
  // the chamber; the chamber is open and convex, so halving terminates.
  Rat sum_h0(0);
  for (const auto& v : h0) sum_h0 += v;
  Rat eps = Rat(1) / Rat(2);
  std::vector<RatVec> samples;
  std::vector<Rat> vols;
  bool found = false;
  for (int attempt = 0; attempt < 64 && !found; ++attempt, eps /= 2) {
    // The sample points must not lie on a hyperplane through the origin, or
    // homogeneous interpolation on them would degenerate.
    if (sum_h0 + eps * Rat(n) == 0) continue;
    samples.clear();
    vols.clear();
    found = true;
    for (const auto& t : mons) {
      RatVec h = h0;
      for (size_t r = 0; r < m; ++r) h[r] += eps * Rat(t[r]);
      const auto verts = chamber_vertices(ch, n, h);
      if (!verts) {
        found = false;
        break;
      }
      samples.push_back(std::move(h));
      vols.push_back(chamber_volume(*verts));
    }
  }
  if (!found)
    throw DomainError("volume_polynomial: no perturbation scale kept all samples in the chamber");

  // Exact interpolation: the samples are the image of the principal lattice
  // {t >= 0, sum t = n} under an invertible affine map avoiding the origin,
  // so the homogeneous Vandermonde system is nonsingular.
  RatMat vandermonde(samples.size(), mons.size());
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = 0; j < mons.size(); ++j) {
      Rat entry(1);
      for (size_t r = 0; r < m; ++r)
        if (mons[j][r] > 0) entry *= rat_pow(samples[i][r], mons[j][r]);
      vandermonde(i, j) = entry;
    }
  const auto coeffs = solve(vandermonde, vols);
  if (!coeffs) throw DomainError("volume_polynomial: interpolation system was singular");

  VolumePolynomial v;
  v.num_rays = m;
  v.degree = n;
  v.chamber_reference = h0;
  for (size_t j = 0; j < mons.size(); ++j)
    if ((*coeffs)[j] != 0) v.coefficients.emplace(mons[j], (*coeffs)[j]);

  // Soundness: the fitted polynomial must reproduce exact volumes at the
  // reference and at five fresh points (inside the chamber by convexity,
  // distinct from every fitting sample).
  std::vector<RatVec> fresh = {h0};
  for (int j = 0; j < 5; ++j) {
    const Rat offset = eps / (Rat(m) * Rat(2 * j + 3));
    RatVec h = h0;
    for (size_t r = 0; r < m; ++r) h[r] += offset * Rat(1 + ((r + j) % 2));
    fresh.push_back(std::move(h));
  }
  for (const auto& h : fresh) {
    const auto verts = chamber_vertices(ch, n, h);
    if (!verts || evaluate_poly(v.coefficients, h) != chamber_volume(*verts))
      throw DomainError("volume_polynomial: fitted polynomial failed the fresh-point check");
  }
  return v;
}

GradedRing build_ring(const Poly& p, size_t m, size_t n) {
  Poly clean;
  for (const auto& [alpha, c] : p) {
    if (c == 0) continue;
    if (alpha.size() != m) throw DomainError("build_ring: exponent arity mismatch");
    int total = 0;
    for (int e : alpha) {
      if (e < 0) throw DomainError("build_ring: negative exponent");
      total += e;
    }
    if (total != static_cast<int>(n))
      throw DomainError("build_ring: polynomial is not homogeneous of the stated degree");
    clean.emplace(alpha, c);
  }
  if (clean.empty()) throw DomainError("build_ring: zero polynomial");

  GradedRing ring;
  ring.num_vars = m;
  ring.degree = n;
  ring.dims.resize(n + 1);
  ring.basis.resize(n + 1);
  ring.pairing.resize(n + 1);

  // Degree-k piece: monomial operators of degree k modulo the kernel of
  // op -> op(P).  The matrix has one row per degree-(n-k) monomial of op(P)
  // and one column per operator; pivot columns of its reduced echelon form
  // are the basis representatives.
  for (size_t k = 0; k <= n; ++k) {
    const auto ops = exponents_of_degree(m, static_cast<int>(k));
    const auto image_mons = exponents_of_degree(m, static_cast<int>(n - k));
    std::map<Exponent, size_t> row_of;
    for (size_t i = 0; i < image_mons.size(); ++i) row_of.emplace(image_mons[i], i);
    RatMat action(image_mons.size(), ops.size());
    for (size_t j = 0; j < ops.size(); ++j) {
      const Poly image = apply_operator(ops[j], clean);
      for (const auto& [gamma, c] : image) action(row_of.at(gamma), j) = c;
    }
    const Rref rr = rref(action);
    ring.dims[k] = rr.rank;
    for (size_t piv : rr.pivots) ring.basis[k].push_back(ops[piv]);
  }

  // Poincare pairing: <a, b> = (a.b)(P) = (alpha+beta)! * coeff_{alpha+beta}.
  for (size_t k = 0; k <= n; ++k) {
    RatMat pm(ring.dims[k], ring.dims[n - k]);
    for (size_t a = 0; a < ring.dims[k]; ++a)
      for (size_t b = 0; b < ring.dims[n - k]; ++b) {
        Exponent total = ring.basis[k][a];
        for (size_t r = 0; r < m; ++r) total[r] += ring.basis[n - k][b][r];
        const auto it = clean.find(total);
        if (it == clean.end()) continue;
        Rat fact(1);
        for (int e : total) fact *= factorial(static_cast<size_t>(e));
        pm(a, b) = fact * it->second;
      }
    ring.pairing[k] = std::move(pm);
  }

  // Duality checks; these hold for every nonzero homogeneous polynomial.
  bool ok = ring.dims[0] == 1 && ring.dims[n] == 1;
  for (size_t k = 0; k <= n && ok; ++k)
    ok = ring.dims[k] == ring.dims[n - k] && rank_of(ring.pairing[k]) == ring.dims[k];
  if (!ok) throw DomainError("build_ring: graded duality checks failed");
  return ring;
}

RatVec class_of_polytope(const Fan& f, const Polytope& q) {
  if (q.ambient_dim != f.ambient_dim)
    throw DomainError("class_of_polytope: ambient dimension mismatch");
  const std::vector<IntVec> rays = fan_rays(f);
  std::map<std::string, size_t> index;
  for (size_t r = 0; r < rays.size(); ++r) index.emplace(vec_to_string(rays[r]), r);
  RatVec h(rays.size());
  for (size_t r = 0; r < rays.size(); ++r) h[r] = support_value(q, rays[r]);

  // The class is only meaningful when the support function of q is linear on
  // every cone of f; it is enough to check the maximal cones.  On each, the
  // face maximal in an interior direction must already be maximal at every
  // ray (and constant along any lineality).
  for (size_t idx : maximal_cone_indices(f)) {
    const Cone& sigma = f.cones[idx];
    if (is_zero_cone(sigma)) continue;
    const Face face = dual_face(q, sigma);
    const RatVec& v = face.vertices[0];
    bool linear = true;
    for (const auto& u : sigma.rays)
      if (dot(u, v) != support_value(q, u)) linear = false;
    for (size_t i = 0; i < sigma.lineality.rows() && linear; ++i) {
      const IntVec l = sigma.lineality.row(i);
      if (dot(l, v) != support_value(q, l)) linear = false;
      IntVec neg(l.size());
      for (size_t t = 0; t < l.size(); ++t) neg[t] = -l[t];
      if (dot(neg, v) != support_value(q, neg)) linear = false;
    }
    if (!linear)
      throw DomainError(
          "class_of_polytope: the support function of the polytope is not linear on the cone " +
          cone_key(sigma));
  }
  return h;
}

Rat top_pairing(const Fan& f, const VolumePolynomial& v, const std::vector<RatVec>& hs) {
  const std::vector<IntVec> rays = fan_rays(f);
  if (rays.size() != v.num_rays)
    throw DomainError("top_pairing: polynomial was built on a fan with a different ray count");
  if (hs.size() != v.degree)
    throw DomainError("top_pairing: need exactly " + std::to_string(v.degree) +
                      " support vectors, got " + std::to_string(hs.size()));
  Poly cur = v.coefficients;
  for (const auto& h : hs) {
    if (h.size() != v.num_rays)
      throw DomainError("top_pairing: support vector length does not match the ray count");
    cur = directional_derivative(cur, h);
  }
  if (cur.empty()) return Rat(0);
  return cur.begin()->second;
}

GradedRing ring_of_fan(const Fan& f, const RatVec& h0) {
  const VolumePolynomial v = volume_polynomial(f, h0);
  Poly scaled;
  const Rat nf = factorial(v.degree);
  for (const auto& [alpha, c] : v.coefficients) scaled.emplace(alpha, nf * c);
  GradedRing ring = build_ring(scaled, v.num_rays, v.degree);
  // Smoothness report: every maximal cone spanned by a lattice basis.
  ring.smooth_fan = true;
  for (size_t idx : maximal_cone_indices(f)) {
    const Cone& c = f.cones[idx];
    IntMat m(0, f.ambient_dim);
    for (const auto& r : c.rays) m.append_row(r);
    Int d = det(m);
    if (d < 0) d = -d;
    if (d != 1) ring.smooth_fan = false;
  }
  return ring;
}

SimplicialRefinement simplicial_common_refinement(const std::vector<Polytope>& qs, long seed) {
  if (qs.empty()) throw DomainError("simplicial_common_refinement: no polytopes given");
  Polytope sum = qs[0];
  for (size_t i = 1; i < qs.size(); ++i) sum = minkowski_sum(sum, qs[i]);
  if (sum.dim != sum.ambient_dim)
    throw DomainError(
        "simplicial_common_refinement: the Minkowski sum is not full-dimensional, so no "
        "complete common fan exists");
  const size_t n = sum.ambient_dim;
  const Fan base = normal_fan(sum);
  const std::vector<IntVec> rays = fan_rays(base);
  const auto base_maximal = maximal_cone_indices(base);

  // Perturb the support values of the sum by small positive rationals: for a
  // generic perturbation the inequality polytope P(h) is simple and its
  // normal fan refines the base fan.  Both properties are verified exactly;
  // failures retry with fresh, smaller perturbations.
  for (long attempt = 0; attempt < 32; ++attempt) {
    std::mt19937_64 rng(static_cast<unsigned long long>(seed + attempt));
    std::uniform_int_distribution<long> num(1, 65535);
    const Rat scale = Rat(1) / (Rat(65536) * Rat(Int(1) << attempt));
    std::vector<std::pair<IntVec, Rat>> ineqs;
    for (const auto& r : rays)
      ineqs.emplace_back(r, support_value(sum, r) + Rat(num(rng)) * scale);
    const Polytope perturbed = convex_hull(hrep_vertices(n, ineqs, {}));
    if (perturbed.dim != n) continue;
    const Fan refined = normal_fan(perturbed);
    if (!is_simplicial(refined)) continue;
    bool refines = true;
    for (size_t tidx : maximal_cone_indices(refined)) {
      bool inside = false;
      for (size_t bidx : base_maximal)
        if (cone_contains_cone(base.cones[bidx], refined.cones[tidx])) {
          inside = true;
          break;
        }
      if (!inside) {
        refines = false;
        break;
      }
    }
    if (!refines) continue;
    const std::vector<IntVec> new_rays = fan_rays(refined);
    RatVec h(new_rays.size());
    for (size_t r = 0; r < new_rays.size(); ++r) h[r] = support_value(perturbed, new_rays[r]);
    return {refined, h};
  }
  throw DomainError(
      "simplicial_common_refinement: no verified simple perturbation found; try another seed");
}

}  // namespace trop
