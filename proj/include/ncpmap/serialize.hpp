#pragma once

// JSON documents exchanged by the command-line tool.
//
// Map document:
//   { "rep": "choi" | "superop", "matrix": [[{"re": x, "im": y} x4] x4] }
// Singular maps:
//   { "singular": true, "family": ..., "parameter": ...,
//     "invariant_set": { "kind": "line" | "ball", "axis": [a1, a2, a3] } }
//
// Floating-point values are written with 12 significant digits.

#include <string>

#include "json.hpp"
#include "ncpmap/channels.hpp"
#include "ncpmap/domain.hpp"
#include "ncpmap/measure.hpp"

namespace ncpmap {

using json = nlohmann::json;

enum class MapRep { Choi, Superop };

double round_sig(double x, int digits = 12);

json to_json(const BlochVector &p);
json to_json(const FixedLine &line);
json to_json(const CMat4 &m);
json map_document(const SuperOp &op, MapRep rep);
json map_document(const SingularMap &m);
json map_document(const AnyMap &m, MapRep rep);

// Throws IoError with a description of the first schema violation.
CMat4 matrix_from_json(const json &j);
AnyMap map_from_document(const json &doc);
AnyMap map_from_text(const std::string &text);

json to_json(const CPVerdict &v);
json to_json(const ValidityVerdict &v);
json domain_summary(const DomainReport &r);
json to_json(const MeasureEstimate &e);
json to_json(const DivergenceScan &s);
json to_json(const CpBoundednessReport &r);

}  // namespace ncpmap
