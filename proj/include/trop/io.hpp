#pragma once

// JSON serialization for polytopes, fans, cycles, and graded-ring reports.
// Every rational value renders as an exact "p/q" string (plain "p" for
// integers); integer vector entries render as JSON integers when they fit in
// 64 bits and as decimal strings otherwise.  Parsers accept both spellings
// and reject floating-point literals: nothing in these documents is ever
// approximate.

#include "trop/cycle.hpp"
#include "trop/kp.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace trop {

// Insertion-ordered so emitted documents list fields in the documented
// order; dumps are still byte-deterministic for identical inputs.
using Json = nlohmann::ordered_json;

// Malformed documents: unreadable files, invalid JSON, wrong shapes, bad
// numeric literals.  Distinct from DomainError so the command line can
// separate "bad file" (exit 1) from "bad mathematics" (exit 2).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

// A bare array of rationals (used for support/reference vectors).
Json ratvec_to_json(const RatVec& v);
RatVec ratvec_from_json(const Json& j);

// {"dim": n, "vertices": [[...], ...]}.  Input vertex lists may be redundant
// or unordered; the hull is recomputed on load.
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

// {"dim": n, "cones": [{"rays": [[...]], "lineality": [[...]]}, ...]}.  Only
// maximal cones are written; the face closure is recomputed on load.
Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

// {"dim": n, "cycle_dim": k, "cones": [{"rays": [[...]], "lineality":
// [[...]], "weight": "p/q"}, ...]}.  Zero-weight cones may be omitted; the
// loader re-canonicalizes and, unless check_balance is false, verifies the
// balance condition (DomainError on violation).
Json cycle_to_json(const TropicalCycle& c);
TropicalCycle cycle_from_json(const Json& j, bool check_balance = true);

// {"dims": [...], "pairing": {"0": [["p/q", ...], ...], ...},
//  "smooth_fan": bool}.  Report only; there is no ring parser.
Json ring_to_json(const GradedRing& r);

// Reads and parses a UTF-8 JSON file; ParseError on I/O or syntax failure.
Json load_json_file(const std::string& path);

// Writes text to a file; ParseError("cannot write ...") on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace trop
