#pragma once

#include <json.hpp>
#include <string_view>

#include "hopfflow/graph.hpp"

namespace hopfflow {

/// Graph file format; `flag_labels` / `vertex_labels` are optional. Missing
/// boundary or involution entries stay unset (-1) so validation can report them.
DecoratedGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const DecoratedGraph& g);

/// Parses text; syntax errors carry the byte offset.
nlohmann::json parse_json_text(std::string_view text, std::string_view what = "input");

}  // namespace hopfflow
