#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pleat/pleated.hpp"
#include "pleat/representation.hpp"
#include "pleat/topology.hpp"
#include "pleat/volume.hpp"

namespace pleat {

using json = nlohmann::json;

// Reads and parses a JSON file; syntax errors become ParseError with line and column.
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& source = "<input>");

// A number or a [re, im] pair.
cplx complex_from_json(const json& j, const std::string& field);
json to_json(cplx z);

// [[re,im], [re,im], [re,im], [re,im]] for a, b, c, d, scaled to determinant one.
Moebius moebius_from_json(const json& j, const std::string& field);
json to_json(const Moebius& m);

json to_json(const ProjectivePoint& p);

// Either {"genus", "gluing": [[c0,c1,c2], ...], "cuff_ids"?} for the glued normal form or
// {"genus", "surface"?, "cuffs": [{"id","word"}], "pants": [{"cuff_ends": [...]}]} where an
// end is a cuff id or {"cuff", "conjugator"?, "inverse"?}. When neither end of a cuff is
// marked inverse, the second one is. The result is validated.
PantsDecomposition decomposition_from_json(const json& j);
json to_json(const PantsDecomposition& pd);

// {"matrices": {"a": matrix, ...}}
Representation representation_from_json(const json& j);
json to_json(const Representation& rho);

// {"manifold": {"generators", "relators"}, "boundary": [{"genus"?, "generator_words",
// "peripheral_words"}]}
BoundaryInclusion inclusion_from_json(const json& j);

struct PathSpec {
    RepresentationPath path;
    std::optional<PantsDecomposition> pd;
    std::string name;
};

// {"recipe": "samples", "samples": [{"t", "matrices"}]} or a Fenchel-Nielsen family
// {"recipe": "fenchel-nielsen", "decomposition"?, "lengths", "twists", "deform": [...]}.
// Deform entries are {"kind": length | twist | bend | twist-circle | conjugate-circle,
// "cuff", "amount", "profile": linear | retrace}.
PathSpec path_from_json(const json& j, const PantsDecomposition* pd_hint = nullptr);

json to_json(const PleatedRealization& r, const BendingData& bd);
json to_json(const AdaptednessReport& rep, const PantsDecomposition& pd);

} // namespace pleat
