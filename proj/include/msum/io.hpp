#pragma once

#include <json.hpp>

#include "msum/semantics.hpp"
#include "msum/ties.hpp"

namespace msum {

// {"alphabet": A, "worlds": n, "relations": [[[i,j],...], ...]}
nlohmann::json frame_to_json(const Frame& f);
Frame frame_from_json(const nlohmann::json& j);

// Frame fields plus {"valuation": {"p0": [worlds], ...}}.
nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

// One array of formula strings per modality.
nlohmann::json condition_to_json(const Condition& c);
Condition condition_from_json(const nlohmann::json& j);

// {"formula": text, "v": "0101", "U": ["..", ...]}, bit i = chain position i.
nlohmann::json tie_to_json(const Tie& t);
Tie tie_from_json(const nlohmann::json& j);

}  // namespace msum
