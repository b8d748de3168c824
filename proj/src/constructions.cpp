#include "treecat/constructions.hpp"

#include <algorithm>

namespace treecat {

namespace {

std::unordered_map<std::string, int> used_names(const Graph& g) {
    std::unordered_map<std::string, int> used;
    for (const auto& n : g.vertex_names()) used.emplace(n, 1);
    return used;
}

std::unordered_map<std::string, int> used_edge_ids(const Graph& g) {
    std::unordered_map<std::string, int> used;
    for (const auto& e : g.edges()) used.emplace(e.id, 1);
    return used;
}

}  // namespace

ConeResult cone_graph(const Graph& g) {
    auto vused = used_names(g);
    std::string apex = fresh_name("p", vused);
    std::vector<std::string> verts = g.vertex_names();
    verts.push_back(apex);

    auto eused = used_edge_ids(g);
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : g.edges())
        edges.emplace_back(e.id, g.vertex_name(e.u), g.vertex_name(e.v));
    ConeResult res;
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::string id = fresh_name("e_" + g.vertex_name(v), eused);
        eused.emplace(id, 1);
        edges.emplace_back(id, g.vertex_name(v), apex);
        res.cone_edge.push_back(id);
    }
    res.graph = Graph::make(verts, edges);
    res.apex = apex;
    return res;
}

ConeResult cone(const Tree& t) { return cone_graph(t.g); }

ConeOfContraction cone_of_contraction(const RootedContraction& phi) {
    const Graph& src = phi.source.tree.g;
    const Graph& tgt = phi.target.tree.g;

    ConeOfContraction out;
    out.source_cone = cone(phi.source.tree);
    out.target_cone = cone(phi.target.tree);

    // G_phi: vertices of T' plus an apex; edges of T' plus one apex edge per
    // vertex of T, attached at its image and named like in cone(T).
    auto vused = used_names(tgt);
    std::string apex = fresh_name("p", vused);
    std::vector<std::string> verts = tgt.vertex_names();
    verts.push_back(apex);
    auto eused = used_edge_ids(tgt);
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : tgt.edges())
        edges.emplace_back(e.id, tgt.vertex_name(e.u), tgt.vertex_name(e.v));
    std::vector<std::string> apex_edge_of(src.num_vertices());
    for (int w = 0; w < src.num_vertices(); ++w) {
        std::string id = fresh_name(out.source_cone.cone_edge[w], eused);
        eused.emplace(id, 1);
        apex_edge_of[w] = id;
        edges.emplace_back(id, tgt.vertex_name(phi.map.vertex_map[w]), apex);
    }
    out.g_phi = Graph::make(verts, edges);

    // pi : cone(T) -> G_phi
    {
        const Graph& cs = out.source_cone.graph;
        std::vector<int> vm(cs.num_vertices());
        for (int v = 0; v < src.num_vertices(); ++v)
            vm[v] = out.g_phi.vertex_index(tgt.vertex_name(phi.map.vertex_map[v]));
        vm[cs.vertex_index(out.source_cone.apex)] = out.g_phi.vertex_index(apex);
        out.pi = make_contraction(cs, out.g_phi, vm);
        // apex edges must land on their counterparts by construction
        for (int w = 0; w < src.num_vertices(); ++w) {
            int e = cs.edge_index(out.source_cone.cone_edge[w]);
            if (out.pi.edge_map[e] != out.g_phi.edge_index(apex_edge_of[w]))
                throw InternalError("ConeMapMismatch", "apex edge image out of order");
        }
    }

    // iota : cone(T') -> G_phi picks the apex edge of the maximal fiber vertex
    {
        const Graph& ct = out.target_cone.graph;
        std::vector<int> vm(ct.num_vertices()), em(ct.num_edges());
        for (int v = 0; v < tgt.num_vertices(); ++v)
            vm[v] = out.g_phi.vertex_index(tgt.vertex_name(v));
        vm[ct.vertex_index(out.target_cone.apex)] = out.g_phi.vertex_index(apex);
        for (int e = 0; e < tgt.num_edges(); ++e)
            em[ct.edge_index(tgt.edge(e).id)] = out.g_phi.edge_index(tgt.edge(e).id);
        for (int w2 = 0; w2 < tgt.num_vertices(); ++w2) {
            int best = -1;
            for (int v = 0; v < src.num_vertices(); ++v) {
                if (phi.map.vertex_map[v] != w2) continue;
                if (best < 0 || phi.source.leq(best, v)) best = v;
            }
            int e = ct.edge_index(out.target_cone.cone_edge[w2]);
            em[e] = out.g_phi.edge_index(apex_edge_of[best]);
        }
        out.iota = Embedding::make(ct, out.g_phi, vm, em);
    }
    return out;
}

SubdivisionResult subdivide(const Tree& t, const std::vector<DirectedEdgeRef>& dedges,
                            const std::vector<int>& lengths) {
    if (dedges.size() != lengths.size())
        throw ValidationError("BadMap", "edge list and length list differ in size");
    const Graph& g = t.g;
    std::vector<int> eidx;
    std::vector<char> chosen(g.num_edges(), 0);
    for (const auto& de : dedges) {
        int e = g.edge_index(de.id);
        if (chosen[e])
            throw ValidationError("DuplicateEdge", "edge '" + de.id + "' subdivided twice");
        chosen[e] = 1;
        eidx.push_back(e);
    }
    for (int m : lengths)
        if (m < 0) throw ValidationError("BadMap", "subdivision lengths must be >= 0");

    // phase 1: insert the positive-length paths
    auto vused = used_names(g);
    auto eused = used_edge_ids(g);
    std::vector<std::string> verts = g.vertex_names();
    std::vector<std::vector<std::string>> labels(dedges.size());
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    std::vector<int> pos_of_edge(g.num_edges(), -1);
    for (size_t i = 0; i < dedges.size(); ++i) pos_of_edge[eidx[i]] = static_cast<int>(i);

    for (int e = 0; e < g.num_edges(); ++e) {
        int i = pos_of_edge[e];
        if (i < 0) {
            edges.emplace_back(g.edge(e).id, g.vertex_name(g.edge(e).u),
                               g.vertex_name(g.edge(e).v));
            continue;
        }
        int tail = dedges[i].reversed ? g.edge(e).v : g.edge(e).u;
        int head = dedges[i].reversed ? g.edge(e).u : g.edge(e).v;
        int m = lengths[i];
        labels[i].assign(m + 1, "");
        labels[i][0] = g.vertex_name(tail);
        if (m == 0) continue;  // contracted in phase 2
        labels[i][m] = g.vertex_name(head);
        for (int k = 1; k < m; ++k) {
            std::string nm = fresh_name(g.edge(e).id + "#" + std::to_string(k), vused);
            vused.emplace(nm, 1);
            verts.push_back(nm);
            labels[i][k] = nm;
        }
        for (int k = 1; k <= m; ++k) {
            std::string id = fresh_name(g.edge(e).id + "#" + std::to_string(k), eused);
            eused.emplace(id, 1);
            edges.emplace_back(id, labels[i][k - 1], labels[i][k]);
        }
    }
    Graph mid = Graph::make(verts, edges);

    // phase 2: contract the zero-length edges
    std::vector<std::string> zero_ids;
    for (size_t i = 0; i < dedges.size(); ++i)
        if (lengths[i] == 0) zero_ids.push_back(dedges[i].id);
    Graph mid2 = mid;
    std::vector<int> vmap(mid.num_vertices());
    for (int v = 0; v < mid.num_vertices(); ++v) vmap[v] = v;
    if (!zero_ids.empty()) {
        // zero-length edges persist verbatim into the phase-1 graph
        std::vector<std::tuple<std::string, std::string, std::string>> edges2 = edges;
        for (size_t i = 0; i < dedges.size(); ++i) {
            if (lengths[i] != 0) continue;
            const auto& e = g.edge(eidx[i]);
            edges2.emplace_back(e.id, g.vertex_name(e.u), g.vertex_name(e.v));
        }
        Graph withz = Graph::make(verts, edges2);
        auto [q, c] = quotient_by_edges(withz, zero_ids);
        mid2 = q;
        vmap.resize(withz.num_vertices());
        for (int v = 0; v < withz.num_vertices(); ++v) vmap[v] = c.vertex_map[v];
    }

    SubdivisionResult res;
    res.tree = Tree::make(mid2);
    res.orig_vertex.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        res.orig_vertex[v] = mid2.vertex_name(vmap[mid.vertex_index(g.vertex_name(v))]);
    res.path_labels.resize(dedges.size());
    for (size_t i = 0; i < dedges.size(); ++i) {
        int m = lengths[i];
        res.path_labels[i].resize(m + 1);
        if (m == 0) {
            int tail = dedges[i].reversed ? g.edge(eidx[i]).v : g.edge(eidx[i]).u;
            res.path_labels[i][0] = res.orig_vertex[tail];
        } else {
            for (int k = 0; k <= m; ++k)
                res.path_labels[i][k] =
                    mid2.vertex_name(vmap[mid.vertex_index(labels[i][k])]);
        }
    }
    return res;
}

SubdivisionInduced subdivision_induced(const Tree& t, const std::vector<DirectedEdgeRef>& dedges,
                                       const OITuple& f) {
    SubdivisionInduced out;
    out.source = subdivide(t, dedges, f.n);
    out.target = subdivide(t, dedges, f.domain_sizes());
    const Graph& big = out.source.tree.g;
    const Graph& small = out.target.tree.g;

    std::vector<int> vm(big.num_vertices(), -1);
    for (int v = 0; v < t.g.num_vertices(); ++v)
        vm[big.vertex_index(out.source.orig_vertex[v])] =
            small.vertex_index(out.target.orig_vertex[v]);
    for (size_t i = 0; i < dedges.size(); ++i) {
        int ni = f.n[i];
        for (int tt = 0; tt <= ni; ++tt) {
            int s = 0;
            for (size_t j = 0; j < f.maps[i].size(); ++j)
                if (f.maps[i][j] <= tt) s = static_cast<int>(j) + 1;
            int from = big.vertex_index(out.source.path_labels[i][tt]);
            int to = small.vertex_index(out.target.path_labels[i][s]);
            if (vm[from] != -1 && vm[from] != to)
                throw InternalError("SubdivisionClash", "inconsistent induced vertex image");
            vm[from] = to;
        }
    }
    out.map = make_contraction(big, small, vm);
    return out;
}

SproutResult sprout(const Tree& t, const std::vector<std::string>& vertices,
                    const std::vector<int>& counts) {
    if (vertices.size() != counts.size())
        throw ValidationError("BadMap", "vertex list and count list differ in size");
    const Graph& g = t.g;
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<int> vidx;
    for (const auto& name : vertices) {
        int v = g.vertex_index(name);
        if (seen[v])
            throw ValidationError("DuplicateVertex", "vertex '" + name + "' sprouted twice");
        seen[v] = 1;
        vidx.push_back(v);
    }
    for (int m : counts)
        if (m < 0) throw ValidationError("BadMap", "sprout counts must be >= 0");

    auto vused = used_names(g);
    auto eused = used_edge_ids(g);
    std::vector<std::string> verts = g.vertex_names();
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : g.edges())
        edges.emplace_back(e.id, g.vertex_name(e.u), g.vertex_name(e.v));

    SproutResult res;
    res.leaf_labels.resize(vertices.size());
    res.leaf_edges.resize(vertices.size());
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (int k = 1; k <= counts[i]; ++k) {
            std::string nm = fresh_name(vertices[i] + "+" + std::to_string(k), vused);
            vused.emplace(nm, 1);
            verts.push_back(nm);
            std::string id = fresh_name("e_" + nm, eused);
            eused.emplace(id, 1);
            edges.emplace_back(id, vertices[i], nm);
            res.leaf_labels[i].push_back(nm);
            res.leaf_edges[i].push_back(id);
        }
    }
    res.tree = Tree::make(Graph::make(verts, edges));
    return res;
}

SproutInduced sprout_induced(const Tree& t, const std::vector<std::string>& vertices,
                             const OITuple& f) {
    SproutInduced out;
    out.source = sprout(t, vertices, f.n);
    out.target = sprout(t, vertices, f.domain_sizes());
    const Graph& big = out.source.tree.g;
    const Graph& small = out.target.tree.g;

    std::vector<int> vm(big.num_vertices(), -1);
    for (int v = 0; v < t.g.num_vertices(); ++v)
        vm[big.vertex_index(t.g.vertex_name(v))] = small.vertex_index(t.g.vertex_name(v));
    for (size_t i = 0; i < vertices.size(); ++i) {
        int base_small = small.vertex_index(vertices[i]);
        for (int tt = 1; tt <= f.n[i]; ++tt) {
            int from = big.vertex_index(out.source.leaf_labels[i][tt - 1]);
            int to = base_small;
            for (size_t j = 0; j < f.maps[i].size(); ++j)
                if (f.maps[i][j] == tt)
                    to = small.vertex_index(out.target.leaf_labels[i][j]);
            vm[from] = to;
        }
    }
    out.map = make_contraction(big, small, vm);
    return out;
}

}  // namespace treecat
