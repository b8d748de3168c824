#pragma once

#include "treecat/morphisms.hpp"

namespace treecat {

// Cone: a fresh apex joined to every vertex of the base graph.
struct ConeResult {
    Graph graph;
    std::string apex;
    std::vector<std::string> cone_edge;  // per base vertex, the id of its apex edge
};

ConeResult cone(const Tree& t);
ConeResult cone_graph(const Graph& g);  // same construction for any base graph

// Intermediate graph of a rooted contraction phi : T -> T'.  G_phi keeps the
// edges of T' and one apex edge for every vertex of T, attached at its image.
// pi collapses cone(T) onto G_phi; iota embeds cone(T') into G_phi picking,
// over each vertex of T', the apex edge indexed by the maximal fiber vertex.
struct ConeOfContraction {
    ConeResult source_cone;  // cone(T)
    ConeResult target_cone;  // cone(T')
    Graph g_phi;
    Contraction pi;    // cone(T) -> G_phi
    Embedding iota;    // cone(T') -> G_phi
};

ConeOfContraction cone_of_contraction(const RootedContraction& phi);

// Edge of a tree with a chosen direction; reversed = false means the stored
// endpoint order (tail = first endpoint).
struct DirectedEdgeRef {
    std::string id;
    bool reversed = false;
};

// Replaces each chosen edge by a directed path; the label grid names the
// path vertices, index 0 at the tail.  A length of 0 contracts the edge.
struct SubdivisionResult {
    Tree tree;
    std::vector<std::vector<std::string>> path_labels;  // [i][t], t = 0..m_i
    std::vector<std::string> orig_vertex;               // image name of each base vertex
};

SubdivisionResult subdivide(const Tree& t, const std::vector<DirectedEdgeRef>& edges,
                            const std::vector<int>& lengths);

// Contraction T(e, n) -> T(e, m) induced by an OI tuple f : [m] -> [n].
struct SubdivisionInduced {
    SubdivisionResult source;  // lengths n
    SubdivisionResult target;  // lengths m
    Contraction map;
};

SubdivisionInduced subdivision_induced(const Tree& t, const std::vector<DirectedEdgeRef>& edges,
                                       const OITuple& f);

// Attaches new leaf edges at the chosen vertices.
struct SproutResult {
    Tree tree;
    std::vector<std::vector<std::string>> leaf_labels;  // [i][t-1], t = 1..m_i
    std::vector<std::vector<std::string>> leaf_edges;
};

SproutResult sprout(const Tree& t, const std::vector<std::string>& vertices,
                    const std::vector<int>& counts);

// Contraction T(v, n) -> T(v, m) induced by an OI tuple: leaves indexed by
// the image of f survive, the others collapse onto their base vertex.
struct SproutInduced {
    SproutResult source;
    SproutResult target;
    Contraction map;
};

SproutInduced sprout_induced(const Tree& t, const std::vector<std::string>& vertices,
                             const OITuple& f);

}  // namespace treecat
