#pragma once

#include <string>

#include <json.hpp>

#include "gpt/check_report.hpp"
#include "gpt/state_table.hpp"

namespace gpt {

using json = nlohmann::json;

/// {"parties":[{"k":2,"l":2,"name":"A"},...], "table":[[...],...]} with
/// table[J][I] = P(i|j). "name" is optional.
json to_json(const StateTable& s);

/// Parses and validates (normalization, range, no-signalling within `tol`).
/// Errors name the worst deviation found.
StateTable state_from_json(const json& j, double tol = kTableTol);
StateTable read_state_file(const std::string& path);

json to_json(const CheckReport& r, bool include_states = true);

}  // namespace gpt
