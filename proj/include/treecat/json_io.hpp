#pragma once

#include <string>

#include "json.hpp"
#include "treecat/graph.hpp"

namespace treecat {

struct LoadedGraph {
    Graph g;
    bool has_root = false;
    std::string root;
};

// wire format: {"format":"treecat-graph","version":1,"vertices":[...],
//               "edges":[{"id":"e1","ends":["a","b"]},...],"root":"a"?}
// unknown fields are rejected
LoadedGraph graph_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json graph_to_json(const Graph& g, const std::string* root = nullptr);

LoadedGraph load_graph_file(const std::string& path);

}  // namespace treecat
