#pragma once

#include <map>
#include <memory>
#include <vector>

#include "treecat/graph.hpp"
#include "treecat/matrix.hpp"
#include "treecat/morphisms.hpp"

namespace treecat {

inline constexpr long long kDefaultMaxGenerators = 5'000'000;

// Reduced Świątkowski complex of a multigraph, truncated to a bidegree box.
// piece(i,n) has one generator per (monomial of degree n-i over the edges,
// ascending set D of i vertices of degree >= 2, difference index j in
// 2..deg(v) for each v in D). Boundaries are stored for i <= i_bound()+1 so
// homology at i_bound() is correct.
class SwiatkowskiComplex {
  public:
    struct Generator {
        std::vector<int> mono;   // exponent per edge index
        std::vector<int> verts;  // ascending vertex indices
        std::vector<int> diffs;  // 2..deg(v), parallel to verts
        bool operator==(const Generator&) const = default;
        auto operator<=>(const Generator&) const = default;
    };

    static SwiatkowskiComplex build(const Graph& g, int n_max, int i_max,
                                    long long max_generators = kDefaultMaxGenerators);

    const Graph& graph() const { return g_; }
    int n_bound() const { return n_max_; }
    int i_bound() const { return i_max_; }
    const std::vector<int>& eligible_vertices() const { return eligible_; }

    long long rank(int i, int n) const;
    const std::vector<Generator>& generators(int i, int n) const;
    long long generator_index(int i, int n, const Generator& gen) const;
    SparseIntMatrix boundary(int i, int n) const;  // piece(i,n) -> piece(i-1,n)

    long long betti(int i, int n) const;
    HomologyGroup homology_z(int i, int n) const;

  private:
    Graph g_;
    int n_max_ = 0, i_max_ = 0;
    std::vector<int> eligible_;
    std::map<std::pair<int, int>, std::vector<Generator>> gens_;
    std::map<std::pair<int, int>, std::map<Generator, long long>> index_;
    std::map<std::pair<int, int>, SparseIntMatrix> boundaries_;
    mutable std::map<std::pair<int, int>, int> boundary_rank_;

    bool stored(int i, int n) const;
    void require_piece(int i, int n) const;
    int boundary_rank(int i, int n) const;
};

// Σ (-1)^i rank_Q H_i(UConf_n(G)) over the full homological support
Int euler_characteristic(const Graph& g, int n,
                         long long max_generators = kDefaultMaxGenerators);

struct ChainMap {
    std::shared_ptr<const SwiatkowskiComplex> source, target;
    std::map<std::pair<int, int>, IntMatrix> mats;  // target rank x source rank

    const IntMatrix& matrix(int i, int n) const;
};

// covariant: S̃(source) -> S̃(target of the embedding)
ChainMap embedding_chain_map(const Embedding& emb, int n_max, int i_max,
                             long long max_generators = kDefaultMaxGenerators);

// contravariant pullback S̃(target of phi) -> S̃(source of phi); factors phi
// into simple one-edge contractions (ascending edge id unless an explicit
// order of contracted edge ids is given)
ChainMap contraction_chain_map(const Contraction& phi, int n_max, int i_max,
                               long long max_generators = kDefaultMaxGenerators,
                               const std::vector<int>* order = nullptr);

// S̃(cone(target)) -> S̃(cone(source)) through the auxiliary graph
ChainMap cone_chain_map(const RootedContraction& phi, int n_max, int i_max,
                        long long max_generators = kDefaultMaxGenerators);

// g after f: both maps' shared middle complex must agree structurally
ChainMap compose_chain_maps(const ChainMap& f, const ChainMap& g);

// matrix of the induced map on H_i(.;Q) in deterministically chosen bases
RatMatrix induced_homology_map(const ChainMap& f, int i, int n);

}  // namespace treecat
