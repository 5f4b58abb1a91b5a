#pragma once

#include <string>

#include "json.hpp"
#include "ssecut/graph.hpp"

namespace ssecut {

/// Parse a JSON file; parse failures rethrow as runtime_error carrying the
/// file name and the parser's byte/line position.
nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

/// Graph schema: {"n": int, "edges": [[u, v, w], ...]} with u < v, 0-indexed.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
Graph load_graph(const std::string& path);

}  // namespace ssecut
