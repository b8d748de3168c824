#pragma once

#include <vector>

#include "treecat/graph.hpp"
#include "treecat/numeric.hpp"
#include "treecat/poly.hpp"

namespace treecat {

inline constexpr int kDefaultMatroidVertexGuard = 12;

// flat of a graphic matroid: a partition of the vertices into connected
// blocks together with the edges lying inside blocks
struct Flat {
    std::vector<int> partition;  // vertex -> block, blocks numbered by first member
    std::vector<int> edges;      // ascending edge indices, closed under cycles
    int rank = 0;                // |V| - #blocks
    int corank = 0;
    bool operator==(const Flat&) const = default;
};

struct FlatLattice {
    Graph graph;
    int matroid_rank = 0;
    std::vector<Flat> flats;  // sorted by (rank, partition); bottom comes first

    int bottom() const;
    std::vector<int> flats_of_rank(int r) const;
    bool leq(int a, int b) const;  // a refines b
};

FlatLattice flats(const Graph& g, int max_vertices = kDefaultMatroidVertexGuard);

Flat closure(const Graph& g, const std::vector<int>& edge_indices);
bool is_flat(const Graph& g, const Flat& f);

struct MinorPair {
    Graph restriction;  // subgraph on the flat's edges
    Graph contraction;  // every block collapsed to a point
};
MinorPair minor(const Graph& g, const Flat& f);

int matroid_rank(const Graph& g);

IntPolynomial characteristic_polynomial(const Graph& g,
                                        int max_vertices = kDefaultMatroidVertexGuard);

// dimensions of the graded pieces of the Orlik-Solomon algebra, d = 0..rank
std::vector<Int> os_dimensions(const Graph& g,
                               int max_vertices = kDefaultMatroidVertexGuard);

IntPolynomial kl_polynomial(const Graph& g,
                            int max_vertices = kDefaultMatroidVertexGuard);

// coefficient of t^i in the Kazhdan-Lusztig polynomial, i.e. dim IH_{2i}
Int ih_dimension(const Graph& g, int i, int max_vertices = kDefaultMatroidVertexGuard);

}  // namespace treecat
