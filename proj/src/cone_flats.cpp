#include "treecat/cone_flats.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "treecat/canonical.hpp"
#include "treecat/constructions.hpp"
#include "treecat/enumerate.hpp"
#include "treecat/errors.hpp"

namespace treecat {

std::vector<std::vector<int>> groovy_subsets(const Tree& r) {
    const Graph& g = r.g;
    int n = g.num_vertices();
    std::vector<std::vector<int>> out;
    for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
        bool cover = true;
        for (int e = 0; e < g.num_edges() && cover; ++e)
            if (!((mask >> g.edge(e).u) & 1) && !((mask >> g.edge(e).v) & 1))
                cover = false;
        if (!cover) continue;
        std::vector<int> w;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1) w.push_back(v);
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> compositions(const Tree& r, const Tree& t) {
    std::vector<std::vector<int>> out;
    int k = r.g.num_vertices();
    if (k > t.g.num_vertices()) return out;
    FlatLattice lat = flats(t.g, t.g.num_vertices());
    for (const Flat& f : lat.flats) {
        int blocks = t.g.num_vertices() - f.rank;
        if (blocks != k) continue;
        // contract blocks and match the shape against r
        std::vector<std::string> names;
        for (int b = 0; b < blocks; ++b) names.push_back("b" + std::to_string(b));
        std::vector<std::tuple<std::string, std::string, std::string>> edges;
        for (int e = 0; e < t.g.num_edges(); ++e) {
            int bu = f.partition[t.g.edge(e).u], bv = f.partition[t.g.edge(e).v];
            if (bu != bv)
                edges.emplace_back(t.g.edge(e).id, names[bu], names[bv]);
        }
        Graph block_graph = Graph::make(names, edges);
        for (const auto& iso : graph_isomorphisms(block_graph, r.g)) {
            std::vector<int> u(t.g.num_vertices());
            for (int v = 0; v < t.g.num_vertices(); ++v) u[v] = iso[f.partition[v]];
            out.push_back(std::move(u));
        }
    }
    return out;
}

namespace {

std::string triple_code(const Tree& t, const ConeFlatTriple& tri) {
    int k = tri.r.g.num_vertices();
    std::vector<char> in_w(k, 0);
    for (int v : tri.w) in_w[v] = 1;
    std::vector<std::string> labels(k);
    for (int v = 0; v < k; ++v) labels[v] = in_w[v] ? "W" : "O";
    for (int tv = 0; tv < t.g.num_vertices(); ++tv)
        labels[tri.u[tv]] += "," + std::to_string(tv);
    return labeled_tree_code(tri.r, labels);
}

}  // namespace

std::vector<ConeFlatTriple> flat_triples(const Tree& t, int max_vertices) {
    if (t.g.num_vertices() > max_vertices)
        throw GuardError("TooLarge", "triple enumeration limited to " +
                                         std::to_string(max_vertices) + " vertices");
    std::map<std::string, ConeFlatTriple> classes;
    for (int k = 1; k <= t.g.num_vertices(); ++k) {
        for (const Tree& r : all_trees(k)) {
            auto comps = compositions(r, t);
            if (comps.empty()) continue;
            auto covers = groovy_subsets(r);
            for (const auto& u : comps)
                for (const auto& w : covers) {
                    ConeFlatTriple tri{r, w, u};
                    std::string code = triple_code(t, tri);
                    classes.emplace(std::move(code), std::move(tri));
                }
        }
    }
    std::vector<ConeFlatTriple> out;
    out.reserve(classes.size());
    for (auto& [code, tri] : classes) out.push_back(std::move(tri));
    return out;
}

Flat triple_to_flat(const Tree& t, const ConeFlatTriple& tri) {
    ConeResult c = cone(t);
    const Graph& cg = c.graph;
    std::vector<char> in_w(tri.r.g.num_vertices(), 0);
    for (int v : tri.w) in_w[v] = 1;
    std::vector<int> picked;
    for (int e = 0; e < t.g.num_edges(); ++e)
        if (tri.u[t.g.edge(e).u] == tri.u[t.g.edge(e).v])
            picked.push_back(cg.edge_index(t.g.edge(e).id));
    for (int tv = 0; tv < t.g.num_vertices(); ++tv)
        if (!in_w[tri.u[tv]]) picked.push_back(cg.edge_index(c.cone_edge[tv]));
    std::sort(picked.begin(), picked.end());
    Flat f = closure(cg, picked);
    if (f.edges != picked)
        throw InternalError("NotClosed", "triple edge set is not closed in the cone");
    return f;
}

LeafBoundReport leaf_bound_report(const Tree& t, int max_vertices) {
    const Graph& g = t.g;
    if (g.num_vertices() > 20)
        throw GuardError("TooLarge", "leaf bound sweep limited to 20 vertices");
    LeafBoundReport rep;
    rep.leaves = static_cast<int>(g.leaves().size());
    rep.lemma_min_slack = std::numeric_limits<int>::max();
    rep.lemma_max_slack = std::numeric_limits<int>::min();
    rep.corollary_min_slack = std::numeric_limits<int>::max();
    rep.corollary_max_slack = std::numeric_limits<int>::min();

    int nv = g.num_vertices();
    for (unsigned long long mask = 0; mask < (1ull << nv); ++mask) {
        bool exact = true;
        int y = 0;
        for (int e = 0; e < g.num_edges() && exact; ++e) {
            int c = static_cast<int>((mask >> g.edge(e).u) & 1) +
                    static_cast<int>((mask >> g.edge(e).v) & 1);
            if (c != 1) exact = false;
        }
        if (!exact) continue;
        for (int v = 0; v < nv; ++v) y += static_cast<int>((mask >> v) & 1);
        int slack = 2 * y + rep.leaves - 2 - g.num_edges();
        ++rep.lemma_cases;
        rep.lemma_min_slack = std::min(rep.lemma_min_slack, slack);
        rep.lemma_max_slack = std::max(rep.lemma_max_slack, slack);
        if (slack < 0) ++rep.lemma_violations;
    }

    for (const ConeFlatTriple& tri : flat_triples(t, max_vertices)) {
        std::vector<char> in_w(tri.r.g.num_vertices(), 0);
        for (int v : tri.w) in_w[v] = 1;
        int rw_edges = 0;
        for (int e = 0; e < tri.r.g.num_edges(); ++e)
            if (in_w[tri.r.g.edge(e).u] && in_w[tri.r.g.edge(e).v]) ++rw_edges;
        int slack = 2 * static_cast<int>(tri.w.size()) + rep.leaves - 2 -
                    tri.r.g.num_edges() - rw_edges;
        ++rep.corollary_cases;
        rep.corollary_min_slack = std::min(rep.corollary_min_slack, slack);
        rep.corollary_max_slack = std::max(rep.corollary_max_slack, slack);
        if (slack < 0) ++rep.corollary_violations;
    }

    if (rep.lemma_cases == 0) rep.lemma_min_slack = rep.lemma_max_slack = 0;
    if (rep.corollary_cases == 0) rep.corollary_min_slack = rep.corollary_max_slack = 0;
    return rep;
}

E1Table e1_dimensions(const Tree& t, int i, int max_vertices) {
    if (i < 0) throw ValidationError("OutOfBounds", "negative homological index");
    Graph cg = cone(t).graph;
    FlatLattice lat = flats(cg, max_vertices);
    E1Table out;
    out.i = i;
    out.dims.assign(lat.matroid_rank + 1, std::vector<Int>(i + 1, Int(0)));
    for (const Flat& f : lat.flats) {
        int p = f.corank;
        MinorPair mp = minor(cg, f);
        auto os = os_dimensions(mp.restriction, max_vertices);
        for (int q = 0; q <= i; ++q) {
            int d = 2 * i - p - q;
            if (d < 0 || d >= static_cast<int>(os.size())) continue;
            if (os[d] == 0) continue;
            Int ih = ih_dimension(mp.contraction, i - q, max_vertices);
            if (ih == 0) continue;
            out.dims[p][q] += os[d] * ih;
        }
    }
    return out;
}

}  // namespace treecat
