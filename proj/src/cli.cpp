#include "trop/cli.hpp"

#include "trop/cycle.hpp"
#include "trop/io.hpp"
#include "trop/kp.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <random>
#include <utility>

namespace trop {

namespace {

// ---------------------------------------------------------------------------
// Rendering.

// Strings print raw (they are exact "p/q" literals, quoting adds noise);
// nested arrays print compactly.
std::string inline_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out = "[";
    for (size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += inline_value(j[i]);
    }
    return out + "]";
  }
  return j.dump();
}

bool needs_block(const Json& v) {
  if (v.is_object()) return true;
  if (!v.is_array()) return false;
  for (const Json& e : v)
    if (e.is_object()) return true;
  return false;
}

void render_text(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<size_t>(depth), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (needs_block(v)) {
        out += pad + k + ":\n";
        render_text(v, depth + 1, out);
      } else {
        out += pad + k + ": " + inline_value(v) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& e : j) {
      if (e.is_object()) {
        // One line per record: "- k: v, k: v, ...".
        std::string line = pad + "- ";
        bool first = true;
        for (const auto& [k, v] : e.items()) {
          if (!first) line += ", ";
          first = false;
          line += k + ": " + inline_value(v);
        }
        out += line + "\n";
      } else {
        out += pad + "- " + inline_value(e) + "\n";
      }
    }
  } else {
    out += pad + inline_value(j) + "\n";
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "text") {
    std::string out;
    render_text(doc, 0, out);
    return out;
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Loading helpers.

void require_arity(const std::vector<std::string>& paths, size_t lo, size_t hi,
                   const std::string& verb, const std::string& what) {
  if (paths.size() >= lo && paths.size() <= hi) return;
  std::string expect = std::to_string(lo);
  if (hi == SIZE_MAX)
    expect += " or more";
  else if (hi != lo)
    expect += " to " + std::to_string(hi);
  throw ParseError(verb + " expects " + expect + " " + what + ", got " +
                   std::to_string(paths.size()));
}

TropicalCycle load_cycle(const std::string& path, bool check_balance) {
  return cycle_from_json(load_json_file(path), check_balance);
}

Polytope load_polytope(const std::string& path) {
  return polytope_from_json(load_json_file(path));
}

Fan load_fan(const std::string& path) { return fan_from_json(load_json_file(path)); }

// ---------------------------------------------------------------------------
// Chamber references for the ring verbs.  The class sum of the input
// polytopes is the natural candidate; when it sits on a chamber wall (the
// fan strictly refines the sum's normal fan) nearby references are searched
// by seeded perturbation, every candidate verified exactly.
RatVec auto_reference(const Fan& f, const std::vector<RatVec>& classes, long seed) {
  const size_t m = fan_rays(f).size();
  RatVec base(m, Rat(0));
  for (const RatVec& h : classes) {
    if (h.size() != m)
      throw DomainError("class has " + std::to_string(h.size()) + " entries for a fan with " +
                        std::to_string(m) + " rays");
    base = vec_add(base, h);
  }
  if (in_chamber(f, base)) return base;
  for (long attempt = 0; attempt < 32; ++attempt) {
    std::mt19937_64 rng(static_cast<unsigned long long>(seed + attempt));
    std::uniform_int_distribution<long> coord(1, 65535);
    const Rat scale = Rat(1) / (Rat(65536) * Rat(Int(1) << attempt));
    RatVec h = base;
    for (size_t r = 0; r < m; ++r) h[r] += Rat(coord(rng)) * scale;
    if (in_chamber(f, h)) return h;
  }
  throw DomainError(
      "no chamber reference found near the polytope classes; supply --reference with a support "
      "vector strictly inside the fan's chamber");
}

Rat normalization_factor(size_t n) {
  Rat f(1);
  for (size_t i = 2; i <= n; ++i) f *= Rat(static_cast<long>(i));
  return f;
}

// ---------------------------------------------------------------------------
// Verbs.

Json run_balance(const std::vector<std::string>& paths) {
  require_arity(paths, 1, 1, "balance", "cycle file");
  const TropicalCycle c = load_cycle(paths[0], /*check_balance=*/false);
  std::string why;
  if (!is_balanced(c, &why)) throw DomainError(why);
  return Json{{"balanced", true}};
}

Json run_sum(const std::vector<std::string>& paths) {
  require_arity(paths, 2, SIZE_MAX, "sum", "cycle files");
  TropicalCycle acc = load_cycle(paths[0], true);
  for (size_t i = 1; i < paths.size(); ++i) acc = add(acc, load_cycle(paths[i], true));
  return cycle_to_json(acc);
}

Json run_intersect(const std::vector<std::string>& paths, long seed) {
  require_arity(paths, 2, 2, "intersect", "cycle files");
  const TropicalCycle a = load_cycle(paths[0], true);
  const TropicalCycle b = load_cycle(paths[1], true);
  IntersectionResult r = stable_intersection_number(a, b, seed);
  std::stable_sort(r.contributing_pairs.begin(), r.contributing_pairs.end(),
                   [](const IntersectionContribution& x, const IntersectionContribution& y) {
                     return x.i != y.i ? x.i < y.i : x.j < y.j;
                   });
  Json pairs = Json::array();
  for (const IntersectionContribution& c : r.contributing_pairs)
    pairs.push_back(Json{{"first", c.i},
                         {"second", c.j},
                         {"index", int_to_json(c.index)},
                         {"local", rat_to_json(c.local)}});
  return Json{{"value", rat_to_json(r.value)}, {"seed", r.seed_used}, {"pairs", std::move(pairs)}};
}

Json run_hypersurface(const std::vector<std::string>& paths) {
  require_arity(paths, 1, 1, "hypersurface", "polytope file");
  return cycle_to_json(tropical_hypersurface(load_polytope(paths[0])));
}

Json run_mixed_volume(const std::vector<std::string>& paths) {
  require_arity(paths, 1, SIZE_MAX, "mixed-volume", "polytope files");
  std::vector<Polytope> ps;
  for (const std::string& p : paths) ps.push_back(load_polytope(p));
  const Rat mv = mixed_volume(ps);
  const Rat bkk = normalization_factor(ps[0].ambient_dim) * mv;
  return Json{{"mixed_volume", rat_to_json(mv)}, {"bkk", rat_to_json(bkk)}};
}

Json run_degree(const std::vector<std::string>& paths, long seed, const std::string& fan_path,
                const std::string& reference_path) {
  require_arity(paths, 1, SIZE_MAX, "degree", "polytope files");
  std::vector<Polytope> ps;
  for (const std::string& p : paths) ps.push_back(load_polytope(p));

  const Rat tropical = intersection_number_of_hypersurfaces(ps, seed);
  const Rat bkk = normalization_factor(ps[0].ambient_dim) * mixed_volume(ps);

  bool have_kp = !fan_path.empty();
  Rat kp(0);
  RatVec reference;
  if (have_kp) {
    const Fan f = load_fan(fan_path);
    std::vector<RatVec> classes;
    for (const Polytope& p : ps) classes.push_back(class_of_polytope(f, p));
    reference = reference_path.empty() ? auto_reference(f, classes, seed)
                                       : ratvec_from_json(load_json_file(reference_path));
    const VolumePolynomial v = volume_polynomial(f, reference);
    kp = top_pairing(f, v, classes);
  }

  if (tropical != bkk || (have_kp && kp != bkk)) {
    std::string msg = "intersection counts disagree: tropical " + rat_to_string(tropical) +
                      ", normalized mixed volume " + rat_to_string(bkk);
    if (have_kp) msg += ", ring pairing " + rat_to_string(kp);
    throw DomainError(msg);
  }

  Json doc{{"tropical", rat_to_json(tropical)}, {"bkk", rat_to_json(bkk)}};
  if (have_kp) {
    doc["kp"] = rat_to_json(kp);
    doc["reference"] = ratvec_to_json(reference);
  }
  doc["seed"] = seed;
  doc["agree"] = true;
  return doc;
}

Json run_kp_ring(const std::vector<std::string>& paths, long seed,
                 const std::string& reference_path) {
  require_arity(paths, 1, SIZE_MAX, "kp-ring", "files (fan, then optional polytopes)");
  const Fan f = load_fan(paths[0]);
  RatVec reference;
  if (!reference_path.empty()) {
    reference = ratvec_from_json(load_json_file(reference_path));
  } else {
    if (paths.size() == 1)
      throw ParseError("kp-ring needs polytope files or --reference to locate a chamber");
    std::vector<RatVec> classes;
    for (size_t i = 1; i < paths.size(); ++i)
      classes.push_back(class_of_polytope(f, load_polytope(paths[i])));
    reference = auto_reference(f, classes, seed);
  }
  return ring_to_json(ring_of_fan(f, reference));
}

Json run_top_pairing(const std::vector<std::string>& paths, long seed,
                     const std::string& reference_path) {
  require_arity(paths, 2, SIZE_MAX, "top-pairing", "files (fan, then polytopes)");
  const Fan f = load_fan(paths[0]);
  std::vector<RatVec> classes;
  for (size_t i = 1; i < paths.size(); ++i)
    classes.push_back(class_of_polytope(f, load_polytope(paths[i])));
  const RatVec reference = reference_path.empty()
                               ? auto_reference(f, classes, seed)
                               : ratvec_from_json(load_json_file(reference_path));
  const VolumePolynomial v = volume_polynomial(f, reference);
  const Rat value = top_pairing(f, v, classes);
  return Json{{"value", rat_to_json(value)}, {"reference", ratvec_to_json(reference)}};
}

Json run_covers(const std::vector<std::string>& paths) {
  require_arity(paths, 2, 2, "covers", "files (fan, cycle)");
  const Fan f = load_fan(paths[0]);
  const TropicalCycle c = load_cycle(paths[1], /*check_balance=*/false);
  return Json{{"covers", fan_covers_support(f, weighted_cones(c))}};
}

Json run_equivalent(const std::vector<std::string>& paths) {
  require_arity(paths, 2, 2, "equivalent", "cycle files");
  const TropicalCycle a = load_cycle(paths[0], /*check_balance=*/false);
  const TropicalCycle b = load_cycle(paths[1], /*check_balance=*/false);
  return Json{{"equivalent", equivalent(a, b)}};
}

Json error_document(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"Exact intersection calculator for balanced weighted fans"};
  app.name("trop");
  app.require_subcommand(1);

  std::vector<std::string> paths;
  std::string format = "json";
  std::string output_path;
  std::string fan_path;
  std::string reference_path;
  long seed = 1;

  const auto add_common = [&](CLI::App* sub, const std::string& files_help) {
    sub->add_option("files", paths, files_help);
    sub->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", output_path, "write the document to this file");
    return sub;
  };
  const auto add_seeded = [&](CLI::App* sub, const std::string& files_help) {
    add_common(sub, files_help);
    sub->add_option("--seed", seed, "seed for the deterministic genericity search (default 1)");
    return sub;
  };

  add_common(app.add_subcommand("balance", "verify the balance condition of a cycle"),
             "cycle file");
  add_common(app.add_subcommand("sum", "add cycles on a common subdivision"), "cycle files");
  add_seeded(app.add_subcommand("intersect",
                                "intersection number of two cycles of complementary dimension"),
             "two cycle files");
  CLI::App* degree_cmd = add_seeded(
      app.add_subcommand("degree", "three-way intersection count of polytope hypersurfaces"),
      "polytope files (one per ambient dimension)");
  degree_cmd->add_option("--fan", fan_path,
                         "complete simplicial fan file for the ring-pairing route");
  degree_cmd->add_option("--reference", reference_path,
                         "support vector file strictly inside the fan's chamber");
  add_common(app.add_subcommand("hypersurface", "tropical hypersurface of a lattice polytope"),
             "polytope file");
  add_common(app.add_subcommand("mixed-volume", "mixed volume and its normalized count"),
             "polytope files (one per ambient dimension)");
  CLI::App* kp_cmd = add_seeded(
      app.add_subcommand("kp-ring", "graded ring report of a complete simplicial fan"),
      "fan file, then polytope files locating the chamber");
  kp_cmd->add_option("--reference", reference_path,
                     "support vector file strictly inside the fan's chamber");
  CLI::App* tp_cmd = add_seeded(
      app.add_subcommand("top-pairing", "top intersection pairing of polytope classes on a fan"),
      "fan file, then one polytope file per ambient dimension");
  tp_cmd->add_option("--reference", reference_path,
                     "support vector file strictly inside the fan's chamber");
  add_common(app.add_subcommand("covers", "does the fan's support cover the cycle's support?"),
             "fan file, cycle file");
  add_common(app.add_subcommand("equivalent", "are two cycles equal up to subdivision?"),
             "two cycle files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out += app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out += app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      out += render(error_document("usage", e.what()), format);
      return 1;
    }

    const std::string verb = app.get_subcommands().at(0)->get_name();
    Json doc;
    if (verb == "balance")
      doc = run_balance(paths);
    else if (verb == "sum")
      doc = run_sum(paths);
    else if (verb == "intersect")
      doc = run_intersect(paths, seed);
    else if (verb == "degree")
      doc = run_degree(paths, seed, fan_path, reference_path);
    else if (verb == "hypersurface")
      doc = run_hypersurface(paths);
    else if (verb == "mixed-volume")
      doc = run_mixed_volume(paths);
    else if (verb == "kp-ring")
      doc = run_kp_ring(paths, seed, reference_path);
    else if (verb == "top-pairing")
      doc = run_top_pairing(paths, seed, reference_path);
    else if (verb == "covers")
      doc = run_covers(paths);
    else
      doc = run_equivalent(paths);

    const std::string text = render(doc, format);
    if (output_path.empty())
      out += text;
    else
      write_text_file(output_path, text);
    return 0;
  } catch (const DomainError& e) {
    out += render(error_document("domain", e.what()), format);
    return 2;
  } catch (const ParseError& e) {
    out += render(error_document("input", e.what()), format);
    return 1;
  } catch (const std::exception& e) {
    out += render(error_document("internal", e.what()), format);
    return 1;
  }
}

}  // namespace trop
