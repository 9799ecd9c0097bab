#include "trop/polytope.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace trop {

namespace {

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Int factorial(size_t n) {
  Int f = 1;
  for (size_t i = 2; i <= n; ++i) f *= Int(i);
  return f;
}

bool rat_vec_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// p strictly inside the open segment (a, b)?
bool strictly_between(const RatVec& p, const RatVec& a, const RatVec& b) {
  size_t j = a.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) {
      j = i;
      break;
    }
  if (j == a.size()) return false;  // a == b
  const Rat t = (p[j] - a[j]) / (b[j] - a[j]);
  if (t <= 0 || t >= 1) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (p[i] - a[i] != t * (b[i] - a[i])) return false;
  return true;
}

// Divides v by its content; returns the primitive vector and the content.
std::pair<IntVec, Int> primitive_and_content(const IntVec& v) {
  const IntVec prim = primitive_generator(v);
  Int content = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (prim[i] != 0) {
      content = v[i] / prim[i];
      break;
    }
  return {prim, content};
}

}  // namespace

Polytope convex_hull(const std::vector<RatVec>& points) {
  if (points.empty()) throw DomainError("convex_hull: empty point list");
  const size_t n = points[0].size();
  for (const auto& p : points)
    if (p.size() != n) throw DomainError("convex_hull: points of mixed dimension");

  std::vector<RatVec> pts = points;
  std::sort(pts.begin(), pts.end(), rat_vec_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // A point strictly inside a segment spanned by two other points is never a
  // vertex; discarding such points early keeps the facet enumeration small
  // for Minkowski sums, whose pairwise vertex sums are mostly interior.
  if (pts.size() > n + 1) {
    std::vector<bool> drop(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t a = 0; a < pts.size() && !drop[i]; ++a) {
        if (a == i) continue;
        for (size_t b = a + 1; b < pts.size(); ++b) {
          if (b == i) continue;
          if (strictly_between(pts[i], pts[a], pts[b])) {
            drop[i] = true;
            break;
          }
        }
      }
    std::vector<RatVec> kept;
    for (size_t i = 0; i < pts.size(); ++i)
      if (!drop[i]) kept.push_back(pts[i]);
    pts.swap(kept);
  }

  // Homogenize: the hull is the slice t = 1 of the cone over {(v, 1)}.
  std::vector<IntVec> gens;
  gens.reserve(pts.size());
  for (const auto& p : pts) {
    RatVec h = p;
    h.push_back(Rat(1));
    gens.push_back(primitive_generator(h));
  }
  const Cone chat = cone_from_int_generators(n + 1, gens);

  Polytope poly;
  poly.ambient_dim = n;
  poly.dim = chat.dim - 1;

  // Extreme rays all have positive last coordinate (every generator does);
  // scaling to t = 1 recovers the vertices.
  for (const auto& r : chat.rays) {
    if (r[n] <= 0) throw DomainError("convex_hull: internal homogenization failure");
    RatVec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = Rat(r[j]) / Rat(r[n]);
    poly.vertices.push_back(std::move(v));
  }
  std::sort(poly.vertices.begin(), poly.vertices.end(), rat_vec_less);

  // Cone facet <(x,t), (u, c)> >= 0 restricts to <x, -u> <= c at t = 1.
  if (poly.dim > 0) {
    for (const auto& f : chat.ineqs) {
      IntVec u(n);
      bool all_zero = true;
      for (size_t j = 0; j < n; ++j) {
        u[j] = -f[j];
        if (u[j] != 0) all_zero = false;
      }
      if (all_zero) continue;  // the t >= 0 facet; empty at t = 1
      auto [prim, content] = primitive_and_content(u);
      poly.facets.emplace_back(std::move(prim), Rat(f[n]) / Rat(content));
    }
    std::sort(poly.facets.begin(), poly.facets.end(),
              [](const std::pair<IntVec, Rat>& a, const std::pair<IntVec, Rat>& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
              });
  }

  // Cone equation <(x,t), (a, b)> = 0 restricts to <x, a> = -b at t = 1.
  for (size_t i = 0; i < chat.eqs.rows(); ++i) {
    const IntVec row = chat.eqs.row(i);
    IntVec a(n);
    for (size_t j = 0; j < n; ++j) a[j] = row[j];
    auto [prim, content] = primitive_and_content(a);
    poly.affine_eqs.emplace_back(std::move(prim), Rat(-row[n]) / Rat(content));
  }
  std::sort(poly.affine_eqs.begin(), poly.affine_eqs.end(),
            [](const std::pair<IntVec, Rat>& a, const std::pair<IntVec, Rat>& b) {
              return a.first != b.first ? a.first < b.first : a.second < b.second;
            });

  return poly;
}

namespace {

// Triangulation by coning from the lexicographically smallest vertex over the
// facets that do not contain it, recursing into each facet.  Each returned
// simplex is a list of dim(P)+1 affinely independent vertices.
std::vector<std::vector<RatVec>> simplices_of(const Polytope& p) {
  if (p.dim == 0) return {{p.vertices[0]}};
  const RatVec& v0 = p.vertices[0];
  std::vector<std::vector<RatVec>> out;
  for (const auto& [normal, offset] : p.facets) {
    if (dot(normal, v0) == offset) continue;
    std::vector<RatVec> tight;
    for (const auto& v : p.vertices)
      if (dot(normal, v) == offset) tight.push_back(v);
    for (auto& s : simplices_of(convex_hull(tight))) {
      s.push_back(v0);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Rat volume(const Polytope& p) {
  const size_t n = p.ambient_dim;
  if (p.dim < n) return Rat(0);
  if (n == 0) return Rat(1);
  Rat total = 0;
  for (const auto& s : simplices_of(p)) {
    RatMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.set_row(i, vec_sub(s[i], s[n]));
    total += rat_abs(det(m));
  }
  return total / Rat(factorial(n));
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim != q.ambient_dim)
    throw DomainError("minkowski_sum: ambient dimension mismatch");
  std::vector<RatVec> sums;
  sums.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) sums.push_back(vec_add(a, b));
  return convex_hull(sums);
}

Rat mixed_volume(const std::vector<Polytope>& ps) {
  if (ps.empty()) throw DomainError("mixed_volume: no polytopes");
  const size_t n = ps[0].ambient_dim;
  if (ps.size() != n)
    throw DomainError("mixed_volume: need exactly as many polytopes as the ambient dimension");
  for (const auto& p : ps)
    if (p.ambient_dim != n) throw DomainError("mixed_volume: ambient dimension mismatch");

  // Inclusion-exclusion polarization over Minkowski sums of subsets, with the
  // subset sums built up one summand at a time.
  const size_t full = size_t(1) << n;
  std::vector<Polytope> sum(full);
  Rat total = 0;
  for (size_t mask = 1; mask < full; ++mask) {
    const size_t low = mask & (~mask + 1);
    const size_t i = size_t(std::countr_zero(mask));
    sum[mask] = (mask == low) ? ps[i] : minkowski_sum(sum[mask ^ low], ps[i]);
    const size_t missing = n - size_t(std::popcount(mask));
    const Rat v = volume(sum[mask]);
    total += (missing % 2 == 0) ? v : -v;
  }
  return total / Rat(factorial(n));
}

Rat support_value(const Polytope& p, const RatVec& u) {
  if (u.size() != p.ambient_dim) throw DomainError("support_value: dimension mismatch");
  if (is_zero(u)) throw DomainError("support_value: zero direction");
  Rat best = dot(p.vertices[0], u);
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    const Rat v = dot(p.vertices[i], u);
    if (v > best) best = v;
  }
  return best;
}

Rat support_value(const Polytope& p, const IntVec& u) { return support_value(p, to_rat(u)); }

Fan normal_fan(const Polytope& p) {
  const size_t n = p.ambient_dim;
  if (p.dim != n) throw DomainError("normal_fan: polytope is not full-dimensional");
  std::vector<Cone> vertex_cones;
  for (const auto& v : p.vertices) {
    // Normal cone at v: directions u with <v, u> >= <w, u> for all vertices w.
    std::set<std::string> seen;
    HRep h;
    h.eqs = IntMat(0, n);
    for (const auto& w : p.vertices) {
      if (w == v) continue;
      IntVec d = primitive_generator(vec_sub(v, w));
      if (seen.insert(vec_to_string(d)).second) h.ineqs.push_back(std::move(d));
    }
    vertex_cones.push_back(cone_from_hrep(n, h));
  }
  return make_fan(n, vertex_cones);
}

namespace {

Face make_face(const Polytope& p, std::vector<size_t> indices) {
  Face f;
  f.vertex_indices = std::move(indices);
  for (size_t i : f.vertex_indices) f.vertices.push_back(p.vertices[i]);
  IntMat diffs(0, p.ambient_dim);
  for (size_t i = 1; i < f.vertices.size(); ++i) {
    const RatVec d = vec_sub(f.vertices[i], f.vertices[0]);
    if (!is_zero(d)) diffs.append_row(primitive_generator(d));
  }
  f.span = saturate(diffs);
  f.dim = f.span.rows();
  return f;
}

}  // namespace

Face dual_face(const Polytope& p, const Cone& sigma) {
  if (sigma.ambient_dim != p.ambient_dim) throw DomainError("dual_face: dimension mismatch");
  std::vector<size_t> indices;
  if (is_zero_cone(sigma)) {
    for (size_t i = 0; i < p.vertices.size(); ++i) indices.push_back(i);
  } else {
    const RatVec u = relative_interior_point(sigma);
    Rat best = dot(p.vertices[0], u);
    for (size_t i = 1; i < p.vertices.size(); ++i) {
      const Rat v = dot(p.vertices[i], u);
      if (v > best) best = v;
    }
    for (size_t i = 0; i < p.vertices.size(); ++i)
      if (dot(p.vertices[i], u) == best) indices.push_back(i);
  }
  return make_face(p, std::move(indices));
}

Int integral_length(const Face& edge) {
  if (edge.dim != 1) throw DomainError("integral_length: face is not an edge");
  if (edge.vertices.size() != 2)
    throw DomainError("integral_length: edge does not have exactly two vertices");
  for (const auto& v : edge.vertices)
    for (const auto& x : v)
      if (rat_den(x) != 1)
        throw DomainError("integral_length: edge endpoints are not lattice points");
  IntVec d(edge.vertices[0].size());
  for (size_t j = 0; j < d.size(); ++j)
    d[j] = rat_num(edge.vertices[1][j]) - rat_num(edge.vertices[0][j]);
  const IntVec prim = primitive_generator(d);
  for (size_t j = 0; j < d.size(); ++j)
    if (prim[j] != 0) return d[j] / prim[j];
  throw DomainError("integral_length: degenerate edge");
}

bool has_lattice_vertices(const Polytope& p) {
  for (const auto& v : p.vertices)
    for (const auto& x : v)
      if (rat_den(x) != 1) return false;
  return true;
}

std::vector<RatVec> hrep_vertices(size_t n,
                                  const std::vector<std::pair<IntVec, Rat>>& ineqs,
                                  const std::vector<std::pair<IntVec, Rat>>& eqs) {
  // Homogenize to the cone { (x, t) : <a, x> <= b t, <e, x> = f t, t >= 0 }.
  HRep h;
  h.eqs = IntMat(0, n + 1);
  for (const auto& [a, b] : ineqs) {
    if (a.size() != n) throw DomainError("hrep_vertices: inequality of wrong dimension");
    const Int den = rat_den(b);
    IntVec row(n + 1);
    for (size_t j = 0; j < n; ++j) row[j] = -den * a[j];
    row[n] = rat_num(b);
    h.ineqs.push_back(std::move(row));
  }
  IntVec tpos(n + 1);
  tpos[n] = 1;
  h.ineqs.push_back(std::move(tpos));
  for (const auto& [e, f] : eqs) {
    if (e.size() != n) throw DomainError("hrep_vertices: equation of wrong dimension");
    const Int den = rat_den(f);
    IntVec row(n + 1);
    for (size_t j = 0; j < n; ++j) row[j] = den * e[j];
    row[n] = -rat_num(f);
    h.eqs.append_row(row);
  }

  IntMat lineality;
  const std::vector<IntVec> rays = extreme_rays(h, n + 1, &lineality);
  // Feasibility first: the solution set is empty iff no ray reaches t > 0
  // (lineality directions always have t = 0), and emptiness with a leftover
  // recession cone is not unboundedness.
  bool feasible = false;
  for (const auto& r : rays)
    if (r[n] > 0) feasible = true;
  if (!feasible) return {};
  if (lineality.rows() > 0) throw DomainError("hrep_vertices: unbounded solution set");
  std::vector<RatVec> out;
  for (const auto& r : rays) {
    if (r[n] == 0) throw DomainError("hrep_vertices: unbounded solution set");
    RatVec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = Rat(r[j]) / Rat(r[n]);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), rat_vec_less);
  return out;
}

namespace {

// Chart volume of { y : constraints } in R^k, for the coverage predicate.
Rat chart_volume(size_t k, const std::vector<std::pair<IntVec, Rat>>& ineqs) {
  const std::vector<RatVec> verts = hrep_vertices(k, ineqs, {});
  if (verts.empty()) return Rat(0);
  return volume(convex_hull(verts));
}

}  // namespace

bool fan_covers_support(const Fan& f, const std::vector<std::pair<Cone, Rat>>& weighted) {
  const size_t n = f.ambient_dim;
  const std::vector<size_t> maximal = maximal_cone_indices(f);
  for (const auto& [sigma, weight] : weighted) {
    if (sigma.ambient_dim != n) throw DomainError("fan_covers_support: dimension mismatch");
    if (weight == 0) continue;
    if (is_zero_cone(sigma)) {
      if (f.cones.empty()) return false;
      continue;
    }
    const size_t k = sigma.dim;

    // Work in lattice coordinates on span(sigma): rows of basis are a basis of
    // the saturated span lattice, and x = y * basis identifies span(sigma)
    // with R^k.  Every candidate piece has the same span, so one chart serves
    // the whole comparison.
    IntMat gens(0, n);
    for (const auto& r : sigma.rays) gens.append_row(r);
    for (size_t i = 0; i < sigma.lineality.rows(); ++i) gens.append_row(sigma.lineality.row(i));
    const IntMat basis = saturate(gens);

    // Bounded cross-section: intersect with the box [-1, 1]^n.
    const auto chart_ineqs = [&](const Cone& c) {
      std::vector<std::pair<IntVec, Rat>> rows;
      for (const auto& u : c.ineqs) {
        IntVec a(k);
        for (size_t i = 0; i < k; ++i) a[i] = -dot(basis.row(i), u);
        rows.emplace_back(std::move(a), Rat(0));
      }
      for (size_t j = 0; j < n; ++j) {
        IntVec col(k), neg(k);
        for (size_t i = 0; i < k; ++i) {
          col[i] = basis(i, j);
          neg[i] = -basis(i, j);
        }
        rows.emplace_back(std::move(col), Rat(1));
        rows.emplace_back(std::move(neg), Rat(1));
      }
      return rows;
    };

    const Rat target = chart_volume(k, chart_ineqs(sigma));
    Rat covered = 0;
    std::set<std::string> seen;
    for (size_t ti : maximal) {
      const Cone piece = cone_intersection(sigma, f.cones[ti]);
      if (piece.dim != k) continue;
      if (!seen.insert(cone_key(piece)).second) continue;
      covered += chart_volume(k, chart_ineqs(piece));
    }
    if (covered != target) return false;
  }
  return true;
}

}  // namespace trop
