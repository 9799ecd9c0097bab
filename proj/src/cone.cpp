#include "trop/cone.hpp"

#include <algorithm>
#include <set>

namespace trop {

namespace {

RatMat stack_rows(const std::vector<IntVec>& ineqs, const IntMat& eqs, size_t n) {
  RatMat m(ineqs.size() + eqs.rows(), n);
  for (size_t i = 0; i < ineqs.size(); ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = Rat(ineqs[i][j]);
  for (size_t i = 0; i < eqs.rows(); ++i)
    for (size_t j = 0; j < n; ++j) m(ineqs.size() + i, j) = Rat(eqs(i, j));
  return m;
}

// Lineality space of an H-rep: the kernel of all rows taken as equations.
IntMat lineality_of_hrep(const HRep& h, size_t n) {
  const auto ker = kernel_basis(stack_rows(h.ineqs, h.eqs, n));
  IntMat rows(ker.size(), n);
  for (size_t i = 0; i < ker.size(); ++i) {
    const IntVec p = primitive_generator(ker[i]);
    for (size_t j = 0; j < n; ++j) rows(i, j) = p[j];
  }
  return saturate(rows);
}

// Canonical representative of the ray class of w modulo a lineality space:
// image under the canonical quotient map, made primitive, lifted back with an
// integral section.  With trivial lineality it is just the primitive vector.
struct RayCanonicalizer {
  bool trivial = true;
  QuotientMap q;
  IntMat section;

  IntVec operator()(const RatVec& w) const {
    if (trivial) return primitive_generator(w);
    const IntVec p = primitive_generator(q.apply(w));
    IntVec out(q.source_dim, Int(0));
    for (size_t i = 0; i < q.source_dim; ++i)
      for (size_t j = 0; j < p.size(); ++j) out[i] += section(i, j) * p[j];
    return out;
  }
};

RayCanonicalizer make_canonicalizer(const IntMat& lineality, size_t n) {
  RayCanonicalizer c;
  if (lineality.rows() == 0) return c;
  c.trivial = false;
  c.q = quotient_coordinates(lineality, n);
  c.section = integral_right_inverse(c.q.q);
  return c;
}

bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string vec_key(const IntVec& v) {
  std::string s;
  for (const auto& x : v) {
    s += x.str();
    s += ',';
  }
  return s;
}

size_t rank_with_extra(const IntMat& m, const RatVec& extra) {
  RatMat s(m.rows() + 1, m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) s(i, j) = Rat(m(i, j));
  for (size_t j = 0; j < m.cols(); ++j) s(m.rows(), j) = extra[j];
  return rank_of(s);
}

Cone trivial_cone_r0() {
  Cone c;
  c.ambient_dim = 0;
  c.lineality = IntMat(0, 0);
  c.eqs = IntMat(0, 0);
  c.dim = 0;
  return c;
}

// Shared assembly: given any generating rays and any lineality generators,
// produce the fully canonical cone by a polar round trip.  The facets of the
// cone are the extreme rays of its polar, whose H-rep is exactly the
// generator list; the polar's lineality is span(cone)^perp.
Cone assemble(size_t n, const std::vector<IntVec>& gens, const IntMat& lin_gens) {
  if (n == 0) return trivial_cone_r0();

  HRep polar;
  polar.ineqs = gens;
  polar.eqs = lin_gens;
  Cone c;
  c.ambient_dim = n;
  c.ineqs = extreme_rays(polar, n, &c.eqs);
  HRep mine{c.ineqs, c.eqs};
  c.rays = extreme_rays(mine, n, &c.lineality);

  IntMat span(c.rays.size() + c.lineality.rows(), n);
  for (size_t i = 0; i < c.rays.size(); ++i)
    for (size_t j = 0; j < n; ++j) span(i, j) = c.rays[i][j];
  for (size_t i = 0; i < c.lineality.rows(); ++i)
    for (size_t j = 0; j < n; ++j) span(c.rays.size() + i, j) = c.lineality(i, j);
  c.dim = rank_of(to_rat(span));
  return c;
}

}  // namespace

std::vector<IntVec> extreme_rays(const HRep& h, size_t n, IntMat* lineality_out) {
  if (n == 0) {
    if (lineality_out) *lineality_out = IntMat(0, 0);
    return {};
  }
  const IntMat lin = lineality_of_hrep(h, n);
  if (lineality_out) *lineality_out = lin;
  const size_t dim_l = lin.rows();
  if (n < dim_l + 1) return {};  // the cone is the whole space
  const size_t rho = n - dim_l - 1;  // rank of an extreme ray's tight system
  const size_t rank_eqs = rank_of(to_rat(h.eqs));
  if (rank_eqs > rho) return {};  // equations already cut down to the lineality
  const size_t s_star = rho - rank_eqs;
  if (s_star > h.ineqs.size()) return {};

  const RayCanonicalizer canon = make_canonicalizer(lin, n);
  std::set<std::string> seen;
  std::vector<IntVec> out;

  // every extreme ray is the kernel of some s_star inequality rows joined
  // with the equations, so enumerating those subsets finds them all
  std::vector<size_t> pick(s_star);
  for (size_t i = 0; i < s_star; ++i) pick[i] = i;
  for (;;) {
    RatMat m(s_star + h.eqs.rows(), n);
    for (size_t i = 0; i < s_star; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = Rat(h.ineqs[pick[i]][j]);
    for (size_t i = 0; i < h.eqs.rows(); ++i)
      for (size_t j = 0; j < n; ++j) m(s_star + i, j) = Rat(h.eqs(i, j));

    const auto ker = kernel_basis(m);
    if (ker.size() == dim_l + 1) {
      RatVec w;
      for (const auto& cand : ker)
        if (rank_with_extra(lin, cand) > dim_l) {
          w = cand;
          break;
        }
      if (!w.empty()) {
        bool plus = true, minus = true;
        for (const auto& a : h.ineqs) {
          const Rat s = dot(a, w);
          if (s < 0) plus = false;
          if (s > 0) minus = false;
          if (!plus && !minus) break;
        }
        if (plus || minus) {
          if (!plus)
            for (auto& x : w) x = -x;
          const IntVec rep = canon(w);
          if (seen.insert(vec_key(rep)).second) out.push_back(rep);
        }
      }
    }

    // next s_star-combination of the inequality indices
    if (s_star == 0) break;
    size_t i = s_star;
    while (i > 0) {
      --i;
      if (pick[i] != i + h.ineqs.size() - s_star) break;
      if (i == 0) {
        i = s_star;
        break;
      }
    }
    if (i == s_star) break;
    ++pick[i];
    for (size_t j = i + 1; j < s_star; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Cone cone_from_int_generators(size_t n, const std::vector<IntVec>& gens,
                              const std::vector<IntVec>& lin_gens) {
  // cheap exact dedup; assemble() removes any remaining redundancy
  std::set<std::string> seen;
  std::vector<IntVec> uniq;
  for (const auto& g : gens) {
    if (is_zero(g)) continue;
    const IntVec p = primitive_generator(g);
    if (seen.insert(vec_key(p)).second) uniq.push_back(p);
  }
  IntMat lin(lin_gens.size(), n);
  for (size_t i = 0; i < lin_gens.size(); ++i)
    for (size_t j = 0; j < n; ++j) lin(i, j) = lin_gens[i][j];
  return assemble(n, uniq, lin);
}

Cone cone_from_generators(size_t n, const std::vector<RatVec>& gens,
                          const std::vector<RatVec>& lin_gens) {
  std::vector<IntVec> ig;
  for (const auto& g : gens)
    if (!is_zero(g)) ig.push_back(primitive_generator(g));
  std::vector<IntVec> il;
  for (const auto& l : lin_gens)
    if (!is_zero(l)) il.push_back(primitive_generator(l));
  return cone_from_int_generators(n, ig, il);
}

Cone cone_from_hrep(size_t n, const HRep& h) {
  if (n == 0) return trivial_cone_r0();
  IntMat lin;
  const std::vector<IntVec> rays = extreme_rays(h, n, &lin);
  std::vector<IntVec> lrows;
  for (size_t i = 0; i < lin.rows(); ++i) lrows.push_back(lin.row(i));
  return cone_from_int_generators(n, rays, lrows);
}

bool cone_contains(const Cone& c, const RatVec& x) {
  if (x.size() != c.ambient_dim) throw std::invalid_argument("cone_contains: bad dimension");
  for (const auto& a : c.ineqs)
    if (dot(a, x) < 0) return false;
  for (size_t i = 0; i < c.eqs.rows(); ++i)
    if (dot(c.eqs.row(i), x) != 0) return false;
  return true;
}

bool cone_contains(const Cone& c, const IntVec& x) { return cone_contains(c, to_rat(x)); }

bool cone_contains_cone(const Cone& outer, const Cone& inner) {
  if (outer.ambient_dim != inner.ambient_dim)
    throw std::invalid_argument("cone_contains_cone: ambient mismatch");
  for (const auto& r : inner.rays)
    if (!cone_contains(outer, r)) return false;
  for (size_t i = 0; i < inner.lineality.rows(); ++i) {
    IntVec l = inner.lineality.row(i);
    if (!cone_contains(outer, l)) return false;
    for (auto& x : l) x = -x;
    if (!cone_contains(outer, l)) return false;
  }
  return true;
}

bool in_relative_interior(const Cone& c, const RatVec& x) {
  if (x.size() != c.ambient_dim) throw std::invalid_argument("relative interior: bad dimension");
  for (const auto& a : c.ineqs)
    if (dot(a, x) <= 0) return false;
  for (size_t i = 0; i < c.eqs.rows(); ++i)
    if (dot(c.eqs.row(i), x) != 0) return false;
  return true;
}

Cone cone_intersection(const Cone& a, const Cone& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw std::invalid_argument("cone_intersection: ambient mismatch");
  HRep h;
  h.ineqs = a.ineqs;
  h.ineqs.insert(h.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  h.eqs = IntMat(a.eqs.rows() + b.eqs.rows(), a.ambient_dim);
  for (size_t i = 0; i < a.eqs.rows(); ++i)
    for (size_t j = 0; j < a.ambient_dim; ++j) h.eqs(i, j) = a.eqs(i, j);
  for (size_t i = 0; i < b.eqs.rows(); ++i)
    for (size_t j = 0; j < a.ambient_dim; ++j) h.eqs(a.eqs.rows() + i, j) = b.eqs(i, j);
  return cone_from_hrep(a.ambient_dim, h);
}

RatVec relative_interior_point(const Cone& c) {
  if (c.dim == 0) throw DomainError("relative_interior_point: zero cone");
  RatVec p(c.ambient_dim, Rat(0));
  for (const auto& r : c.rays)
    for (size_t j = 0; j < c.ambient_dim; ++j) p[j] += Rat(r[j]);
  return p;
}

std::vector<Cone> faces_of_cone(const Cone& c) {
  std::vector<Cone> out;
  std::set<std::string> seen;
  const size_t f = c.ineqs.size();
  if (f >= 8 * sizeof(size_t)) throw std::invalid_argument("faces_of_cone: too many facets");
  for (size_t mask = 0; mask < (size_t(1) << f); ++mask) {
    // rays tight on every selected facet span the face cut out by the mask
    std::vector<IntVec> tight;
    for (const auto& r : c.rays) {
      bool ok = true;
      for (size_t i = 0; i < f && ok; ++i)
        if ((mask & (size_t(1) << i)) && dot(c.ineqs[i], r) != 0) ok = false;
      if (ok) tight.push_back(r);
    }
    std::vector<IntVec> lrows;
    for (size_t i = 0; i < c.lineality.rows(); ++i) lrows.push_back(c.lineality.row(i));
    Cone face = cone_from_int_generators(c.ambient_dim, tight, lrows);
    if (seen.insert(cone_key(face)).second) out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), cone_less);
  return out;
}

bool is_zero_cone(const Cone& c) { return c.dim == 0; }

std::string cone_key(const Cone& c) {
  std::string s = "d" + std::to_string(c.dim) + "|r";
  for (const auto& r : c.rays) {
    s += '(';
    s += vec_key(r);
    s += ')';
  }
  s += "|l";
  for (size_t i = 0; i < c.lineality.rows(); ++i) {
    s += '(';
    s += vec_key(c.lineality.row(i));
    s += ')';
  }
  return s;
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return cone_key(a) < cone_key(b);
}

}  // namespace trop
