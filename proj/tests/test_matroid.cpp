#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treecat/constructions.hpp"
#include "treecat/errors.hpp"
#include "treecat/enumerate.hpp"
#include "treecat/matroid.hpp"

using namespace treecat;
using namespace testutil;

namespace {

Graph theta() {
    return mk_graph({"a", "b"}, {{"p1", "a", "b"}, {"p2", "a", "b"}, {"p3", "a", "b"}});
}

Graph k4() {
    return mk_graph({"a", "b", "c", "d"}, {{"e1", "a", "b"},
                                           {"e2", "a", "c"},
                                           {"e3", "a", "d"},
                                           {"e4", "b", "c"},
                                           {"e5", "b", "d"},
                                           {"e6", "c", "d"}});
}

std::vector<Graph> population() {
    std::vector<Graph> gs;
    gs.push_back(path_tree(3).g);
    gs.push_back(star_tree(3).g);
    gs.push_back(triangle());
    gs.push_back(theta());
    gs.push_back(k4());
    gs.push_back(cone(path_tree(2)).graph);
    gs.push_back(mk_graph({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}}));
    gs.push_back(mk_graph({"a", "b", "c", "d"}, {{"e1", "a", "b"}, {"e2", "c", "d"}}));
    return gs;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::string> vs = a.vertex_names();
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (const auto& e : a.edges())
        es.emplace_back(e.id, a.vertex_name(e.u), a.vertex_name(e.v));
    for (const auto& name : b.vertex_names()) vs.push_back(name + "#2");
    for (const auto& e : b.edges())
        es.emplace_back(e.id + "#2", b.vertex_name(e.u) + "#2", b.vertex_name(e.v) + "#2");
    return Graph::make(vs, es);
}

Graph glue_at(const Graph& a, const std::string& va, const Graph& b, const std::string& vb) {
    std::vector<std::string> vs = a.vertex_names();
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (const auto& e : a.edges())
        es.emplace_back(e.id, a.vertex_name(e.u), a.vertex_name(e.v));
    auto rename = [&](const std::string& name) { return name == vb ? va : name + "#2"; };
    for (const auto& name : b.vertex_names())
        if (name != vb) vs.push_back(name + "#2");
    for (const auto& e : b.edges())
        es.emplace_back(e.id + "#2", rename(b.vertex_name(e.u)), rename(b.vertex_name(e.v)));
    return Graph::make(vs, es);
}

std::set<std::vector<int>> lattice_edge_sets(const FlatLattice& lat) {
    std::set<std::vector<int>> out;
    for (const Flat& f : lat.flats) out.insert(f.edges);
    return out;
}

int block_count(const std::vector<int>& partition) {
    std::set<int> blocks(partition.begin(), partition.end());
    return static_cast<int>(blocks.size());
}

}  // namespace

TEST_CASE("flat lattices match the brute-force edge-set scan") {
    std::mt19937 rng(777);
    std::vector<Graph> gs = population();
    for (int rep = 0; rep < 5; ++rep) gs.push_back(random_tree(rng, 5 + rep % 2).g);
    for (const Graph& g : gs) {
        FlatLattice lat = flats(g);
        auto brute = brute_flat_edge_sets(g);
        std::set<std::vector<int>> bset(brute.begin(), brute.end());
        CHECK(lattice_edge_sets(lat) == bset);
        CHECK(lat.flats.size() == bset.size());
        CHECK(lat.matroid_rank == g.num_vertices() - g.num_components());
        for (size_t a = 0; a < lat.flats.size(); ++a) {
            const Flat& f = lat.flats[a];
            CHECK(f.rank == g.num_vertices() - block_count(f.partition));
            CHECK(f.corank == lat.matroid_rank - f.rank);
            CHECK(is_flat(g, f));
            if (a > 0) CHECK(lat.flats[a - 1].rank <= f.rank);
        }
        // the lattice order is containment of flat edge sets
        for (size_t a = 0; a < lat.flats.size(); ++a)
            for (size_t b = 0; b < lat.flats.size(); ++b) {
                bool inc = std::includes(lat.flats[b].edges.begin(), lat.flats[b].edges.end(),
                                         lat.flats[a].edges.begin(), lat.flats[a].edges.end());
                CHECK(lat.leq(static_cast<int>(a), static_cast<int>(b)) == inc);
            }
        // bottom is the closure of the empty set: exactly the loops
        const Flat& bot = lat.flats[lat.bottom()];
        CHECK(bot.rank == 0);
        std::vector<int> loops;
        for (int e = 0; e < g.num_edges(); ++e)
            if (g.is_loop(e)) loops.push_back(e);
        CHECK(bot.edges == loops);
    }
    CHECK(flats(triangle()).flats.size() == 5);
    CHECK(flats(k4()).flats.size() == 15);
    CHECK(flats(cone(path_tree(2)).graph).flats.size() == 13);
}

TEST_CASE("closure properties") {
    Graph tri = triangle();
    Flat single = closure(tri, {0});
    CHECK(single.edges == std::vector<int>{0});
    CHECK(single.rank == 1);
    Flat pair = closure(tri, {0, 1});
    CHECK(pair.edges == std::vector<int>{0, 1, 2});
    CHECK(pair.rank == 2);
    CHECK_THROWS_AS(closure(tri, {7}), ValidationError);

    std::mt19937 rng(888);
    for (const Graph& g : population()) {
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<int> sub;
            for (int e = 0; e < g.num_edges(); ++e)
                if (rng() % 2) sub.push_back(e);
            Flat f = closure(g, sub);
            CHECK(is_flat(g, f));
            CHECK(std::includes(f.edges.begin(), f.edges.end(), sub.begin(), sub.end()));
            Flat again = closure(g, f.edges);
            CHECK(again == f);
        }
    }
    // a merged partition that is not edge-closed is not a flat
    Flat fake;
    fake.partition = {0, 0, 0};
    fake.edges = {0, 1};
    fake.rank = 2;
    CHECK_FALSE(is_flat(tri, fake));
    CHECK_THROWS_AS(minor(tri, fake), ValidationError);
}

TEST_CASE("minors split the rank") {
    for (const Graph& g : population()) {
        int rk = matroid_rank(g);
        FlatLattice lat = flats(g);
        for (const Flat& f : lat.flats) {
            MinorPair mp = minor(g, f);
            CHECK(mp.restriction.num_edges() == static_cast<int>(f.edges.size()));
            CHECK(matroid_rank(mp.restriction) == f.rank);
            CHECK(matroid_rank(mp.contraction) == rk - f.rank);
            CHECK(mp.contraction.num_vertices() == block_count(f.partition));
        }
    }
}

TEST_CASE("characteristic polynomials") {
    CHECK(characteristic_polynomial(triangle()).c ==
          std::vector<Int>{2, -3, 1});
    CHECK(characteristic_polynomial(theta()).c == std::vector<Int>{-1, 1});
    CHECK(characteristic_polynomial(k4()).c ==
          std::vector<Int>{-6, 11, -6, 1});
    // trees: every edge is a bridge, so chi = (t-1)^edges
    IntPolynomial tm1 = IntPolynomial::monomial(1, 1) - IntPolynomial(Int(1));
    CHECK(characteristic_polynomial(path_tree(3).g) == tm1 * tm1 * tm1);
    CHECK(characteristic_polynomial(star_tree(3).g) == tm1 * tm1 * tm1);
    // loops kill the polynomial
    Graph lg = mk_graph({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}});
    CHECK(characteristic_polynomial(lg) == IntPolynomial());

    for (const Graph& g : population()) {
        IntPolynomial chi = characteristic_polynomial(g);
        CHECK(chi == mobius_chi(g));
        if (!g.has_loops() && matroid_rank(g) >= 1) CHECK(chi.eval(1) == 0);
    }
}

TEST_CASE("Orlik-Solomon dimensions") {
    CHECK(os_dimensions(triangle()) == std::vector<Int>{1, 3, 2});
    CHECK(os_dimensions(theta()) == std::vector<Int>{1, 1});
    CHECK(os_dimensions(k4()) == std::vector<Int>{1, 6, 11, 6});
    CHECK(os_dimensions(path_tree(3).g) == std::vector<Int>{1, 3, 3, 1});
    for (const Graph& g : population()) {
        auto dims = os_dimensions(g);
        Int total = 0;
        for (const Int& d : dims) total += d;
        CHECK(total == abs(characteristic_polynomial(g).eval(-1)));
    }
}

TEST_CASE("Orlik-Solomon dimensions convolve under one-point gluing") {
    auto convolve = [](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> out(a.size() + b.size() - 1, Int(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    Graph wedge = glue_at(triangle(), "a", path_tree(1).g, "v0");
    CHECK(os_dimensions(wedge) ==
          convolve(os_dimensions(triangle()), os_dimensions(path_tree(1).g)));

    std::mt19937 rng(999);
    for (int rep = 0; rep < 6; ++rep) {
        Tree t1 = random_tree(rng, 3 + static_cast<int>(rng() % 3));
        Tree t2 = random_tree(rng, 3 + static_cast<int>(rng() % 3));
        std::string v1 = t1.g.vertex_name(static_cast<int>(rng() % t1.g.num_vertices()));
        std::string v2 = t2.g.vertex_name(static_cast<int>(rng() % t2.g.num_vertices()));
        Graph glued = glue_at(t1.g, v1, t2.g, v2);
        CHECK(os_dimensions(glued) == convolve(os_dimensions(t1.g), os_dimensions(t2.g)));
    }
}

TEST_CASE("Kazhdan-Lusztig polynomials of small graphs") {
    for (int nv = 1; nv <= 5; ++nv)
        for (const Tree& t : all_trees(nv))
            CHECK(kl_polynomial(t.g).c == std::vector<Int>{1});
    // simplification does not change the polynomial
    CHECK(kl_polynomial(triangle()).c == std::vector<Int>{1});
    CHECK(kl_polynomial(theta()).c == std::vector<Int>{1});
    Graph lg = mk_graph({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}});
    CHECK(kl_polynomial(lg).c == std::vector<Int>{1});

    CHECK(kl_polynomial(cone(path_tree(2)).graph).c == std::vector<Int>{1, 1});
    CHECK(kl_polynomial(cone(path_tree(3)).graph).c == std::vector<Int>{1, 3});
    CHECK(ih_dimension(cone(path_tree(3)).graph, 0) == 1);
    CHECK(ih_dimension(cone(path_tree(3)).graph, 1) == 3);
    CHECK(ih_dimension(cone(path_tree(3)).graph, 5) == 0);
    CHECK(ih_dimension(cone(path_tree(3)).graph, -1) == 0);
}

TEST_CASE("Kazhdan-Lusztig polynomials multiply over disjoint unions") {
    std::vector<Graph> parts{cone(path_tree(2)).graph, cone(path_tree(3)).graph,
                             triangle(), path_tree(2).g, k4()};
    for (size_t a = 0; a < parts.size(); ++a)
        for (size_t b = a; b < parts.size(); ++b) {
            Graph u = disjoint_union(parts[a], parts[b]);
            if (u.num_vertices() > kDefaultMatroidVertexGuard) continue;
            CHECK(kl_polynomial(u) == kl_polynomial(parts[a]) * kl_polynomial(parts[b]));
        }
}

TEST_CASE("vertex guards") {
    Tree big = path_tree(12);  // 13 vertices
    CHECK_THROWS_AS(flats(big.g), GuardError);
    CHECK_THROWS_AS(characteristic_polynomial(big.g), GuardError);
    CHECK_THROWS_AS(kl_polynomial(big.g), GuardError);
    CHECK(flats(big.g, 13).matroid_rank == 12);
    IntPolynomial tm1 = IntPolynomial::monomial(1, 1) - IntPolynomial(Int(1));
    IntPolynomial expect(Int(1));
    for (int k = 0; k < 12; ++k) expect = expect * tm1;
    CHECK(characteristic_polynomial(big.g, 13) == expect);
}
