#pragma once

#include <string>
#include <vector>

#include "treecat/constructions.hpp"
#include "treecat/graph.hpp"
#include "treecat/matroid.hpp"
#include "treecat/numeric.hpp"
#include "treecat/poly.hpp"
#include "treecat/swiatkowski.hpp"

namespace treecat {

enum class InvariantKind {
    betti,          // dim H_i(UConf_n(T)) with chosen coefficients
    betti_cone,     // same on cone(T)
    ih_cone,        // dim IH_{2i} of the cone's reciprocal plane
    euler,          // Euler characteristic of UConf_n(T)
    euler_cone,     // same on cone(T)
    subtree_count,  // number of subtrees
    hom_count       // |Hom(T, R)| in the contraction category
};

struct InvariantSpec {
    InvariantKind kind = InvariantKind::betti;
    Tree base;
    std::string root;  // optional, carried for rooted uses
    int i = 0;
    int n = 0;
    char coeff = 'q';  // 'z' or 'q', betti kinds only
    Tree hom_target;   // hom_count only
    long long max_generators = kDefaultMaxGenerators;
    int max_vertices = kDefaultMatroidVertexGuard;
};

struct GrowthMode {
    bool subdividing = true;             // false = sprouting
    std::vector<DirectedEdgeRef> edges;  // axes when subdividing
    std::vector<std::string> vertices;   // axes when sprouting
    std::string describe() const;
};

Int evaluate_invariant(const InvariantSpec& spec, const Tree& t);

// exact invariant values over the grid of trees T(m̄) in the window
GridSamples invariant_grid(const InvariantSpec& spec, const GrowthMode& mode,
                           const std::vector<long long>& lo,
                           const std::vector<long long>& hi);

struct GrowthReport {
    std::string mode;
    GridSamples samples;
    FitResult fit;
    int claimed_degree = 0;
    bool pass = false;
};

GrowthReport growth_report(const GridSamples& samples, int claimed_degree,
                           const std::string& mode_desc = "");

// closed forms; names: fan_ih(m,i), thag_ih2(m), star_b1(m,n), cone_star_b1(m),
// gal_chi_star(m,n), gal_chi_cone_star(m,n), ih2_subdivided_star(m1,m2,m3)
Int closed_form_oracle(const std::string& name, const std::vector<Int>& params);

// first Betti number of UConf_n(cone(T)) for n >= 2, independent of n
Int b1_cone_tree(const Tree& t);

struct CrossCheckPoint {
    std::vector<long long> coords;
    Int computed, expected;
    bool match = false;
};

struct CrossCheckReport {
    std::string invariant;
    std::string oracle;
    std::vector<CrossCheckPoint> points;
    bool pass = false;
};

CrossCheckReport cross_check(const InvariantSpec& spec, const std::string& oracle,
                             const GrowthMode& mode, const std::vector<long long>& lo,
                             const std::vector<long long>& hi);

}  // namespace treecat
