/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "cop/qcore.hpp"

namespace cop {

// State file schema (JSON):
//   {"dim": n, "factor_dims": [..], "matrix": [[[re,im], ...], ...]}   row-major
//   {"dim": n, "factor_dims": [..], "vector": [[re,im], ...]}          pure
// Channels extend it with {"kraus": [matrix, ...], "class": "gio"}.
// Readers accept matrices that fail Hermiticity by <= 1e-10 and symmetrize
// (that is the DensityOperator ingestion contract). Validation errors carry
// the offending field path.

using LoadedState = std::variant<DensityOperator, PureState>;

LoadedState load_state(const nlohmann::json& j);
LoadedState load_state_file(const std::string& path);

// A pure-state file is converted to its projector.
DensityOperator load_density_file(const std::string& path);

nlohmann::json to_json(const DensityOperator& state);
nlohmann::json to_json(const PureState& state);
nlohmann::json to_json(const KrausChannel& channel);

KrausChannel load_channel(const nlohmann::json& j);
KrausChannel load_channel_file(const std::string& path);

void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace cop
