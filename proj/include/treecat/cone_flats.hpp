#pragma once

#include <vector>

#include "treecat/graph.hpp"
#include "treecat/matroid.hpp"
#include "treecat/numeric.hpp"

namespace treecat {

inline constexpr int kDefaultTripleVertexGuard = 9;

// (R, W, U): a tree R, a vertex cover W of R, and an assignment of the base
// tree's vertices to connected blocks indexed by Vert(R)
struct ConeFlatTriple {
    Tree r;
    std::vector<int> w;  // ascending vertex indices of r
    std::vector<int> u;  // base tree vertex -> r vertex
};

// all vertex covers of r, ascending size then lexicographic
std::vector<std::vector<int>> groovy_subsets(const Tree& r);

// all assignments Vert(t) -> Vert(r) whose blocks are nonempty subtrees of t,
// adjacent in t exactly when their indices are adjacent in r
std::vector<std::vector<int>> compositions(const Tree& r, const Tree& t);

// one representative per equivalence class of triples, deduplicated by the
// canonical form of r labeled with (W membership, block contents)
std::vector<ConeFlatTriple> flat_triples(const Tree& t,
                                         int max_vertices = kDefaultTripleVertexGuard);

// edge set = intra-block tree edges plus the cone edges over blocks whose
// index lies outside W; verified closed in cone(t)
Flat triple_to_flat(const Tree& t, const ConeFlatTriple& triple);

struct LeafBoundReport {
    int leaves = 0;
    long long lemma_cases = 0;
    int lemma_violations = 0;
    int lemma_min_slack = 0;
    int lemma_max_slack = 0;
    long long corollary_cases = 0;
    int corollary_violations = 0;
    int corollary_min_slack = 0;
    int corollary_max_slack = 0;
};

// lemma: |T| <= 2|Y| + l - 2 over subsets Y meeting every edge exactly once;
// corollary: |R| + |R_W| <= 2|W| + l - 2 over triple classes
LeafBoundReport leaf_bound_report(const Tree& t,
                                  int max_vertices = kDefaultTripleVertexGuard);

struct E1Table {
    int i = 0;
    std::vector<std::vector<Int>> dims;  // dims[p][q], p = corank, q = 0..i
};

E1Table e1_dimensions(const Tree& t, int i,
                      int max_vertices = kDefaultMatroidVertexGuard);

}  // namespace treecat
