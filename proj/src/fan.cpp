#include "trop/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace trop {

namespace {

Cone trivial_cone_r0() {
  Cone c;
  c.ambient_dim = 0;
  c.lineality = IntMat(0, 0);
  c.eqs = IntMat(0, 0);
  c.dim = 0;
  return c;
}

std::vector<IntVec> lineality_rows(const Cone& c) {
  std::vector<IntVec> rows;
  for (size_t i = 0; i < c.lineality.rows(); ++i) rows.push_back(c.lineality.row(i));
  return rows;
}

}  // namespace

Fan make_fan(size_t n, const std::vector<Cone>& cones, bool validate) {
  Fan f;
  f.ambient_dim = n;
  std::set<std::string> seen;
  for (const auto& c : cones) {
    if (c.ambient_dim != n) throw std::invalid_argument("make_fan: ambient mismatch");
    for (auto& face : faces_of_cone(c))
      if (seen.insert(cone_key(face)).second) f.cones.push_back(std::move(face));
  }
  std::sort(f.cones.begin(), f.cones.end(), cone_less);
  if (validate) {
    std::string why;
    if (!fan_is_valid(f, &why)) throw DomainError("make_fan: " + why);
  }
  return f;
}

bool fan_is_valid(const Fan& f, std::string* why) {
  // pre-collect each cone's face keys; then every pairwise intersection must
  // be a stored cone that is a face of both sides
  std::vector<std::set<std::string>> face_keys(f.cones.size());
  std::set<std::string> stored;
  for (size_t i = 0; i < f.cones.size(); ++i) {
    stored.insert(cone_key(f.cones[i]));
    for (const auto& face : faces_of_cone(f.cones[i])) face_keys[i].insert(cone_key(face));
  }
  for (size_t i = 0; i < f.cones.size(); ++i) {
    for (const auto& k : face_keys[i])
      if (!stored.count(k)) {
        if (why) *why = "fan is not face-closed at " + cone_key(f.cones[i]);
        return false;
      }
    for (size_t j = i + 1; j < f.cones.size(); ++j) {
      const Cone meet = cone_intersection(f.cones[i], f.cones[j]);
      const std::string k = cone_key(meet);
      if (!face_keys[i].count(k) || !face_keys[j].count(k)) {
        if (why)
          *why = "intersection of " + cone_key(f.cones[i]) + " and " + cone_key(f.cones[j]) +
                 " is not a common face";
        return false;
      }
    }
  }
  return true;
}

std::optional<size_t> find_cone(const Fan& f, const Cone& c) {
  for (size_t i = 0; i < f.cones.size(); ++i)
    if (f.cones[i] == c) return i;
  return std::nullopt;
}

std::vector<size_t> maximal_cone_indices(const Fan& f) {
  std::vector<size_t> out;
  for (size_t i = 0; i < f.cones.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < f.cones.size() && maximal; ++j)
      if (j != i && f.cones[j].dim > f.cones[i].dim &&
          cone_contains_cone(f.cones[j], f.cones[i]))
        maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<size_t> cones_of_dim(const Fan& f, size_t d) {
  std::vector<size_t> out;
  for (size_t i = 0; i < f.cones.size(); ++i)
    if (f.cones[i].dim == d) out.push_back(i);
  return out;
}

Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw std::invalid_argument("common_refinement: ambient mismatch");
  // intersections of maximal cones suffice; face closure supplies the rest
  std::vector<Cone> pieces;
  for (size_t i : maximal_cone_indices(a))
    for (size_t j : maximal_cone_indices(b))
      pieces.push_back(cone_intersection(a.cones[i], b.cones[j]));
  return make_fan(a.ambient_dim, pieces);
}

Fan star_quotient(const Fan& f, const Cone& delta, const QuotientMap& q) {
  if (!find_cone(f, delta)) throw DomainError("star_quotient: delta is not a cone of the fan");
  const size_t n = f.ambient_dim;
  if (q.source_dim != n || q.target_dim != n - delta.dim)
    throw DomainError("star_quotient: quotient map has wrong shape");
  // the quotient must kill exactly span(delta)
  for (const auto& r : delta.rays)
    if (!is_zero(q.apply(r))) throw DomainError("star_quotient: quotient map does not kill delta");
  for (const auto& l : lineality_rows(delta))
    if (!is_zero(q.apply(l))) throw DomainError("star_quotient: quotient map does not kill delta");

  std::vector<Cone> images;
  for (const auto& sigma : f.cones) {
    if (!cone_contains_cone(sigma, delta)) continue;
    std::vector<RatVec> gens;
    for (const auto& r : sigma.rays) gens.push_back(q.apply(to_rat(r)));
    std::vector<RatVec> lins;
    for (const auto& l : lineality_rows(sigma)) lins.push_back(q.apply(to_rat(l)));
    // delta's own span maps to zero; surviving directions generate the image
    std::vector<RatVec> nonzero_gens, nonzero_lins;
    for (auto& g : gens)
      if (!is_zero(g)) nonzero_gens.push_back(g);
    for (auto& l : lins)
      if (!is_zero(l)) nonzero_lins.push_back(l);
    images.push_back(cone_from_generators(q.target_dim, nonzero_gens, nonzero_lins));
  }
  return make_fan(q.target_dim, images);
}

Fan star_quotient(const Fan& f, const Cone& delta) {
  if (!find_cone(f, delta)) throw DomainError("star_quotient: delta is not a cone of the fan");
  if (delta.dim == f.ambient_dim) {
    Fan out;
    out.ambient_dim = 0;
    out.cones.push_back(trivial_cone_r0());
    return out;
  }
  IntMat span(delta.rays.size() + delta.lineality.rows(), f.ambient_dim);
  for (size_t i = 0; i < delta.rays.size(); ++i)
    for (size_t j = 0; j < f.ambient_dim; ++j) span(i, j) = delta.rays[i][j];
  for (size_t i = 0; i < delta.lineality.rows(); ++i)
    for (size_t j = 0; j < f.ambient_dim; ++j)
      span(delta.rays.size() + i, j) = delta.lineality(i, j);
  return star_quotient(f, delta, quotient_coordinates(span, f.ambient_dim));
}

bool is_complete(const Fan& f, std::string* why) {
  const size_t n = f.ambient_dim;
  if (n == 0) {
    if (f.cones.empty()) {
      if (why) *why = "empty fan";
      return false;
    }
    return true;
  }
  std::vector<size_t> top = cones_of_dim(f, n);
  if (top.empty()) {
    if (why) *why = "no full-dimensional cones";
    return false;
  }
  // purity: every cone is a face of some full-dimensional cone
  std::set<std::string> top_face_keys;
  std::map<std::string, int> facet_count;
  for (size_t i : top) {
    for (const auto& face : faces_of_cone(f.cones[i])) {
      top_face_keys.insert(cone_key(face));
      if (face.dim + 1 == n) ++facet_count[cone_key(face)];
    }
  }
  for (const auto& c : f.cones)
    if (!top_face_keys.count(cone_key(c))) {
      if (why) *why = "fan is not pure: stray cone " + cone_key(c);
      return false;
    }
  // boundary-free covering: each wall separates exactly two maximal cones
  for (const auto& [key, count] : facet_count)
    if (count != 2) {
      if (why) *why = "wall " + key + " lies in " + std::to_string(count) + " maximal cones";
      return false;
    }
  return true;
}

}  // namespace trop
