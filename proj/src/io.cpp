#include "trop/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace trop {

namespace {

// Shape checks shared by the parsers.  Everything structural raises
// ParseError; mathematical violations are left to the constructors, which
// raise DomainError.

const Json& expect_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
  return j;
}

const Json& expect_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected a JSON array");
  return j;
}

const Json& expect_key(const Json& j, const std::string& key, const std::string& what) {
  expect_object(j, what);
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(what + ": missing key \"" + key + "\"");
  return *it;
}

size_t expect_dim(const Json& j, const std::string& key, const std::string& what) {
  const Json& v = expect_key(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(what + ": \"" + key + "\" must be a nonnegative integer");
  return static_cast<size_t>(v.get<long long>());
}

std::vector<IntVec> intvec_list_from_json(const Json& j, size_t dim, const std::string& what) {
  expect_array(j, what);
  std::vector<IntVec> out;
  for (const Json& row : j) {
    expect_array(row, what);
    if (row.size() != dim)
      throw ParseError(what + ": vector has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(dim));
    IntVec v;
    for (const Json& entry : row) v.push_back(int_from_json(entry));
    out.push_back(std::move(v));
  }
  return out;
}

// Parses one {"rays": ..., "lineality": ...} object; lineality may be absent.
Cone cone_from_json(const Json& j, size_t dim, const std::string& what) {
  expect_object(j, what);
  const std::vector<IntVec> rays =
      intvec_list_from_json(expect_key(j, "rays", what), dim, what + " rays");
  std::vector<IntVec> lins;
  if (j.contains("lineality"))
    lins = intvec_list_from_json(j.at("lineality"), dim, what + " lineality");
  return cone_from_int_generators(dim, rays, lins);
}

Json cone_to_json(const Cone& c) {
  Json rays = Json::array();
  for (const IntVec& r : c.rays) {
    Json row = Json::array();
    for (const Int& v : r) row.push_back(int_to_json(v));
    rays.push_back(std::move(row));
  }
  Json lins = Json::array();
  for (size_t i = 0; i < c.lineality.rows(); ++i) {
    Json row = Json::array();
    for (size_t t = 0; t < c.lineality.cols(); ++t) row.push_back(int_to_json(c.lineality(i, t)));
    lins.push_back(std::move(row));
  }
  return Json{{"rays", std::move(rays)}, {"lineality", std::move(lins)}};
}

}  // namespace

Json rat_to_json(const Rat& r) { return Json(rat_to_string(r)); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Int(j.get<long long>());
  if (j.is_string()) {
    const Rat r = rat_from_json(j);
    if (rat_den(r) != 1) throw ParseError("expected an integer, got " + j.dump());
    return rat_num(r);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json ratvec_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& r : v) out.push_back(rat_to_json(r));
  return out;
}

RatVec ratvec_from_json(const Json& j) {
  expect_array(j, "rational vector");
  RatVec out;
  for (const Json& entry : j) out.push_back(rat_from_json(entry));
  return out;
}

Json polytope_to_json(const Polytope& p) {
  Json verts = Json::array();
  for (const RatVec& v : p.vertices) verts.push_back(ratvec_to_json(v));
  return Json{{"dim", p.ambient_dim}, {"vertices", std::move(verts)}};
}

Polytope polytope_from_json(const Json& j) {
  const size_t dim = expect_dim(j, "dim", "polytope");
  const Json& verts = expect_key(j, "vertices", "polytope");
  expect_array(verts, "polytope vertices");
  std::vector<RatVec> pts;
  for (const Json& row : verts) {
    RatVec v = ratvec_from_json(row);
    if (v.size() != dim)
      throw ParseError("polytope vertex has " + std::to_string(v.size()) +
                       " coordinates, expected " + std::to_string(dim));
    pts.push_back(std::move(v));
  }
  return convex_hull(pts);
}

Json fan_to_json(const Fan& f) {
  Json cones = Json::array();
  for (size_t idx : maximal_cone_indices(f)) cones.push_back(cone_to_json(f.cones[idx]));
  return Json{{"dim", f.ambient_dim}, {"cones", std::move(cones)}};
}

Fan fan_from_json(const Json& j) {
  const size_t dim = expect_dim(j, "dim", "fan");
  const Json& cones_json = expect_key(j, "cones", "fan");
  expect_array(cones_json, "fan cones");
  std::vector<Cone> cones;
  for (const Json& c : cones_json) cones.push_back(cone_from_json(c, dim, "fan cone"));
  return make_fan(dim, cones);
}

Json cycle_to_json(const TropicalCycle& c) {
  Json cones = Json::array();
  for (const auto& [cone, w] : weighted_cones(c)) {
    Json entry = cone_to_json(cone);
    entry["weight"] = rat_to_json(w);
    cones.push_back(std::move(entry));
  }
  return Json{{"dim", c.ambient_dim}, {"cycle_dim", c.dim}, {"cones", std::move(cones)}};
}

TropicalCycle cycle_from_json(const Json& j, bool check_balance) {
  const size_t dim = expect_dim(j, "dim", "cycle");
  const size_t k = expect_dim(j, "cycle_dim", "cycle");
  const Json& cones_json = expect_key(j, "cones", "cycle");
  expect_array(cones_json, "cycle cones");
  std::vector<std::pair<Cone, Rat>> weighted;
  for (const Json& c : cones_json) {
    Cone cone = cone_from_json(c, dim, "cycle cone");
    const Rat w = rat_from_json(expect_key(c, "weight", "cycle cone"));
    weighted.emplace_back(std::move(cone), w);
  }
  return make_cycle(dim, k, weighted, check_balance);
}

Json ring_to_json(const GradedRing& r) {
  Json pairing = Json::object();
  for (size_t k = 0; k < r.pairing.size(); ++k) {
    const RatMat& mat = r.pairing[k];
    Json rows = Json::array();
    for (size_t a = 0; a < mat.rows(); ++a) {
      Json row = Json::array();
      for (size_t b = 0; b < mat.cols(); ++b) row.push_back(rat_to_json(mat(a, b)));
      rows.push_back(std::move(row));
    }
    pairing[std::to_string(k)] = std::move(rows);
  }
  return Json{{"dims", r.dims}, {"pairing", std::move(pairing)}, {"smooth_fan", r.smooth_fan}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
  if (!out) throw ParseError("cannot write file: " + path);
}

}  // namespace trop
