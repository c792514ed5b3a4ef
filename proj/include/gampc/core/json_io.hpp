#pragma once

#include <string>

#include <json.hpp>

#include "gampc/core/adversary.hpp"
#include "gampc/core/circuit.hpp"

namespace gampc {

// {"n": int, "Z": [[1,2],[3]]}; "Z": "singletons" is accepted as shorthand.
AdversaryStructure adversary_from_json(const nlohmann::json& j);
nlohmann::json adversary_to_json(const AdversaryStructure& z);

// {"inputs_per_party": int, "gates": [{"op":"add"|"mul","in":[a,b]}, ...], "output": wire}
// Input wires come first (parties * inputs_per_party of them); an optional "parties"
// field overrides the party count passed in.
Circuit circuit_from_json(const nlohmann::json& j, int parties);
nlohmann::json circuit_to_json(const Circuit& c);

nlohmann::json load_json_file(const std::string& path);

}  // namespace gampc
