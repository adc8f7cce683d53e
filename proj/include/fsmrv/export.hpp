// SPDX-License-Identifier: Apache-2.0
//
// Model serialization: a versioned JSON dump ("fsmrv": 1) with exact
// round-trip, and deterministic DOT rendering with start/violation/unknown
// highlighting.

#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "fsmrv/model.hpp"

namespace fsmrv {

struct render_options {
    // Canonical state key (model::state_key) -> color; allowed colors are
    // green, red, gray. The start state defaults to green, states with
    // Unknown components to gray; explicit entries win.
    std::map<std::string, std::string> highlight;
    bool show_counts = true;
    bool compact = false;  // label = component values only, no attr names
};

std::string to_dot(const model& m, const render_options& opts = {});

nlohmann::json model_to_json(const model& m);
std::string model_to_json_text(const model& m);

// Throws model_error on version mismatch or schema violations.
model model_from_json(const nlohmann::json& j);
model model_from_json_text(const std::string& text);

}  // namespace fsmrv
