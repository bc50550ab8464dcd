#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "trc/normalize.hpp"
#include "trc/rewrite.hpp"
#include "trc/tree.hpp"

namespace trc {

// Tree JSON: {"atoms": ["p","q"], "children": [[label, tree], ...]}.
nlohmann::json tree_to_json(const ModalTree& t);
ModalTree tree_from_json(const nlohmann::json& j);
std::string tree_to_string(const ModalTree& t);
ModalTree tree_from_string(std::string_view text);

// Instance JSON: {"rule": "J", "pos": [1], "i": 1, "j": 2}; "beta" for Lambda.
nlohmann::json instance_to_json(const RuleInstance& r);
RuleInstance instance_from_json(const nlohmann::json& j);

// Trace JSONL: first line the initial tree, one instance per following line.
// Lines of the form {"stage_bounds": [...]} are metadata and are skipped by
// the reader.
std::string trace_to_jsonl(const Trace& tr);
Trace trace_from_jsonl(std::string_view text);

// A normal trace serializes as its flat trace plus a trailing
// {"stage_bounds": [r, m, d, a, s]} line holding cumulative stage end indices.
std::string normal_trace_to_jsonl(const NormalTrace& nt);
NormalTrace normal_trace_from_jsonl(std::string_view text);

}  // namespace trc
