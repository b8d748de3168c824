#pragma once

#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "treecat/errors.hpp"

namespace treecat {

// A half-edge is an edge index together with the end it sits at
// (side 0 = first stored endpoint, side 1 = second).  A loop contributes
// both of its half-edges to the same vertex.
struct HalfEdge {
    int edge = -1;
    int side = 0;
    friend bool operator==(const HalfEdge& a, const HalfEdge& b) {
        return a.edge == b.edge && a.side == b.side;
    }
    friend bool operator<(const HalfEdge& a, const HalfEdge& b) {
        return std::tie(a.edge, a.side) < std::tie(b.edge, b.side);
    }
};

// Finite multigraph with string-named vertices and edges.  Loops and
// parallel edges are allowed.  Vertices and edges keep their insertion
// order; every enumeration in the library walks them in that order.
class Graph {
public:
    struct Edge {
        std::string id;
        int u = -1;
        int v = -1;
    };

    Graph() = default;

    // (id, endpoint, endpoint) triples; endpoint order is kept and is
    // meaningful wherever an orientation is needed.
    static Graph make(std::vector<std::string> vertices,
                      std::vector<std::tuple<std::string, std::string, std::string>> edges);

    int num_vertices() const { return static_cast<int>(vnames_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_name(int v) const { return vnames_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<std::string>& vertex_names() const { return vnames_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(const std::string& name) const { return vidx_.count(name) > 0; }
    bool has_edge_id(const std::string& id) const { return eidx_.count(id) > 0; }
    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;

    bool is_loop(int e) const { return edges_.at(e).u == edges_.at(e).v; }
    int degree(int v) const;
    int loop_count(int v) const;
    std::vector<HalfEdge> half_edges_at(int v) const;  // sorted by (edge, side)
    int half_edge_vertex(const HalfEdge& h) const;
    // 1-based position of h in the sorted half-edge list at its vertex
    int half_edge_position(const HalfEdge& h) const;

    std::vector<int> neighbors(int v) const;  // deduplicated, ascending
    std::vector<int> component_ids() const;
    int num_components() const;
    bool is_connected() const;
    // connected and |E| = |V|-1; such a graph is automatically simple
    bool is_tree_shape() const;
    bool has_loops() const;
    std::vector<int> leaves() const;  // degree-1 vertices, ascending

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<std::string> vnames_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> vidx_;
    std::unordered_map<std::string, int> eidx_;
};

// A Graph that passed the tree check.
struct Tree {
    Graph g;
    static Tree make(Graph graph);
    int num_edges() const { return g.num_edges(); }
    friend bool operator==(const Tree& a, const Tree& b) { return a.g == b.g; }
};

// Tree with a chosen root; v <= w means w lies on the path from v to the
// root (so the root is the unique maximum).
struct RootedTree {
    Tree tree;
    int root = -1;
    std::vector<int> parent;  // -1 at the root
    std::vector<int> depth;

    static RootedTree make(Tree t, const std::string& root_name);
    static RootedTree make(Tree t, int root_index);
    bool leq(int v, int w) const;  // v <= w in the tree order
    friend bool operator==(const RootedTree& a, const RootedTree& b) {
        return a.tree == b.tree && a.root == b.root;
    }
};

// name not yet present in `used`, derived from `base` by appending primes
std::string fresh_name(const std::string& base,
                       const std::unordered_map<std::string, int>& used);

}  // namespace treecat
