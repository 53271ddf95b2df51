#pragma once

#include <json.hpp>
#include <string>

#include "ectff/catalog.hpp"
#include "ectff/designs.hpp"
#include "ectff/frames.hpp"
#include "ectff/triples.hpp"

namespace ectff::io {

using nlohmann::json;

json to_json(const ParamTriple& t);
ParamTriple triple_from_json(const json& j);

// {"schema":"ectff-frame/1", dim, n, r, field, blocks: [n][dim][r] of [re, im]}
json to_json(const FusionFrame& f);
FusionFrame frame_from_json(const json& j, const Tolerances& tol = {});

json to_json(const VerificationReport& r);

// {"schema":"ectff-df/1", group, k, lambda, blocks}; elements are integers for cyclic
// groups and coordinate arrays otherwise. An optional "within" lists the subgroup.
json to_json(const DifferenceFamily& df);
// Accepts a single family or a search result ({"families": [...]}, first entry).
// The family is re-verified.
DifferenceFamily df_from_json(const json& j);
json to_json(const DfSearchResult& r);

// {"v": V, "blocks": [[...], ...]} on points 0..V-1.
json to_json(const Bibd& b);
Bibd bibd_from_json(const json& j);

json to_json(const ExistenceVerdict& v);
json to_json(const OrbitClass& c, const ParamTriple& query);
json to_json(const RuleEvaluation& e);
json to_json(const CertificationReport& r);

json parse_text(const std::string& text, const std::string& what);
json read_file(const std::string& path);

}  // namespace ectff::io
