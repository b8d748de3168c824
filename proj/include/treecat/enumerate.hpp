#pragma once

#include <vector>

#include "treecat/canonical.hpp"
#include "treecat/graph.hpp"
#include "treecat/morphisms.hpp"

namespace treecat {

// All contractions source -> target: every (|V|-|V'|)-subset of edges is
// contracted and the quotient is matched against the target in all ways.
std::vector<Contraction> hom_contractions(const Tree& source, const Tree& target);

// Connected subgraphs on a nonempty vertex subset, single vertices included.
Int subtree_count(const Tree& t);
std::vector<std::vector<int>> subtree_list(const Tree& t);

// One representative per isomorphism class of trees on n >= 1 vertices.
std::vector<Tree> all_trees(int n);

// All vertex bijections a -> b preserving adjacency with multiplicity.
std::vector<std::vector<int>> graph_isomorphisms(const Graph& a, const Graph& b);

}  // namespace treecat
