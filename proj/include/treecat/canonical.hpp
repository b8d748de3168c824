#pragma once

#include "treecat/graph.hpp"
#include "treecat/numeric.hpp"

namespace treecat {

struct CanonicalForm {
    std::string code;
    Int aut_count = 1;
    int edge_orbit_count = 0;
};

// Isomorphism-invariant code, automorphism count, and number of edge orbits
// under the automorphism group (parallel edges count as one orbit member).
// Trees are encoded directly; everything else goes through a refinement plus
// backtracking search and is guarded by `max_vertices`.
CanonicalForm canonical_form(const Graph& g, int max_vertices = 10);
CanonicalForm canonical_form(const RootedTree& rt);

// Code of a tree with a label attached to every vertex; two labeled trees
// get the same code iff an isomorphism matches the labels exactly.
std::string labeled_tree_code(const Tree& t, const std::vector<std::string>& labels);

bool isomorphic(const Graph& a, const Graph& b, int max_vertices = 10);

}  // namespace treecat
