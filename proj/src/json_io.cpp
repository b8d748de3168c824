#include "treecat/json_io.hpp"

#include <fstream>
#include <tuple>
#include <vector>

#include "treecat/errors.hpp"

namespace treecat {

using nlohmann::ordered_json;

LoadedGraph graph_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ValidationError("BadSchema", "graph document must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "format" && key != "version" && key != "vertices" && key != "edges" &&
            key != "root")
            throw ValidationError("BadSchema", "unknown field '" + key + "'");
    if (!j.contains("format") || !j["format"].is_string() ||
        j["format"].get<std::string>() != "treecat-graph")
        throw ValidationError("BadSchema", "format must be \"treecat-graph\"");
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<long long>() != 1)
        throw ValidationError("BadSchema", "version must be 1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ValidationError("BadSchema", "vertices must be an array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ValidationError("BadSchema", "edges must be an array");

    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string())
            throw ValidationError("BadSchema", "vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_object()) throw ValidationError("BadSchema", "edges must be objects");
        for (const auto& [key, value] : e.items())
            if (key != "id" && key != "ends")
                throw ValidationError("BadSchema", "unknown edge field '" + key + "'");
        if (!e.contains("id") || !e["id"].is_string())
            throw ValidationError("BadSchema", "edge id must be a string");
        if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 ||
            !e["ends"][0].is_string() || !e["ends"][1].is_string())
            throw ValidationError("BadSchema", "edge ends must be a pair of vertex names");
        edges.emplace_back(e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                           e["ends"][1].get<std::string>());
    }

    LoadedGraph lg;
    lg.g = Graph::make(vertices, edges);
    if (j.contains("root")) {
        if (!j["root"].is_string())
            throw ValidationError("BadSchema", "root must be a vertex name");
        lg.root = j["root"].get<std::string>();
        if (!lg.g.has_vertex(lg.root))
            throw ValidationError("BadSchema", "root names a missing vertex");
        lg.has_root = true;
    }
    return lg;
}

ordered_json graph_to_json(const Graph& g, const std::string* root) {
    ordered_json j;
    j["format"] = "treecat-graph";
    j["version"] = 1;
    j["vertices"] = ordered_json::array();
    for (const auto& name : g.vertex_names()) j["vertices"].push_back(name);
    j["edges"] = ordered_json::array();
    for (const auto& e : g.edges()) {
        ordered_json je;
        je["id"] = e.id;
        je["ends"] = {g.vertex_name(e.u), g.vertex_name(e.v)};
        j["edges"].push_back(std::move(je));
    }
    if (root) j["root"] = *root;
    return j;
}

LoadedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("BadFile", "cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("BadSchema", "JSON parse failure in '" + path + "': " + e.what());
    }
    return graph_from_json(j);
}

}  // namespace treecat
