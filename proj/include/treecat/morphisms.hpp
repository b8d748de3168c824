#pragma once

#include <optional>
#include <vector>

#include "treecat/graph.hpp"

namespace treecat {

// Surjective vertex map with connected fibers; non-contracted edges biject
// onto the target edge set.  Records which source edges are contracted.
struct Contraction {
    Graph source;
    Graph target;
    std::vector<int> vertex_map;         // source vertex -> target vertex
    std::vector<int> edge_map;           // source edge -> target edge, -1 if contracted
    std::vector<int> contracted;         // contracted source edges, ascending

    friend bool operator==(const Contraction& a, const Contraction& b) {
        return a.source == b.source && a.target == b.target && a.vertex_map == b.vertex_map &&
               a.edge_map == b.edge_map;
    }
};

// Injective graph map: distinct vertices to distinct vertices, edges to
// edges with matching endpoints.
struct Embedding {
    Graph source;
    Graph target;
    std::vector<int> vertex_map;
    std::vector<int> edge_map;

    static Embedding make(Graph source, Graph target, std::vector<int> vertex_map,
                          std::vector<int> edge_map);
};

// Root-preserving order embedding of rooted tree vertex posets:
// v <= w iff f(v) <= f(w).
struct OrderEmbedding {
    RootedTree source;
    RootedTree target;
    std::vector<int> vertex_map;

    static OrderEmbedding make(RootedTree source, RootedTree target,
                               std::vector<int> vertex_map);
};

// Contraction between rooted trees whose vertex map preserves the root.
struct RootedContraction {
    RootedTree source;
    RootedTree target;
    Contraction map;

    static RootedContraction make(RootedTree source, RootedTree target, Contraction map);
};

// Builds the contraction determined by a vertex map.  Every fiber must be
// spanned by exactly the edges inside it (a spanning tree), cross edges
// must match target edges one for one, and source loops must match target
// loops at the image vertex.
Contraction make_contraction(const Graph& source, const Graph& target,
                             const std::vector<int>& vertex_map);
Contraction make_contraction(const Graph& source, const Graph& target,
                             const std::vector<std::pair<std::string, std::string>>& vertex_map);

// g after f (apply f first); f.target must equal g.source structurally.
Contraction compose(const Contraction& f, const Contraction& g);

// Collapses each edge in `edge_ids`; surviving edges keep their ids, merged
// vertices take the name of their smallest member.  Contracted loops simply
// disappear; surviving edges inside a merged block become loops.
std::pair<Graph, Contraction> quotient_by_edges(const Graph& g,
                                                const std::vector<std::string>& edge_ids);

// Deletes loops and collapses parallel edges onto the representative with
// the smallest index.  Second component maps every non-loop edge id to its
// representative's id.
std::pair<Graph, std::vector<std::pair<std::string, std::string>>> simplify(const Graph& g);

// Order-dual of a rooted contraction: each target vertex goes to the
// maximal vertex of its fiber.
OrderEmbedding rooted_dual(const RootedContraction& phi);

// Order-dual of a root-preserving order embedding: each vertex w goes to
// the minimal vertex whose image lies weakly above w.
RootedContraction rooted_dual(const OrderEmbedding& psi);

// Tuples of strictly increasing maps f_i : [m_i] -> [n_i] (1-based).
struct OITuple {
    std::vector<std::vector<int>> maps;  // ascending values in 1..n[i]
    std::vector<int> n;                  // codomain sizes

    static OITuple make(std::vector<std::vector<int>> maps, std::vector<int> n);
    static OITuple identity(const std::vector<int>& m);
    std::vector<int> domain_sizes() const;
    // this after g: g : [k]->[m], this : [m]->[n], result : [k]->[n]
    OITuple compose_after(const OITuple& g) const;
};

}  // namespace treecat
