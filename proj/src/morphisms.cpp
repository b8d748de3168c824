#include "treecat/morphisms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace treecat {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Embedding Embedding::make(Graph source, Graph target, std::vector<int> vertex_map,
                          std::vector<int> edge_map) {
    if (static_cast<int>(vertex_map.size()) != source.num_vertices() ||
        static_cast<int>(edge_map.size()) != source.num_edges())
        throw ValidationError("BadMap", "embedding map sizes do not match the source");
    std::vector<int> seen_v(target.num_vertices(), 0), seen_e(target.num_edges(), 0);
    for (int im : vertex_map) {
        if (im < 0 || im >= target.num_vertices())
            throw ValidationError("BadMap", "embedding vertex image out of range");
        if (seen_v[im]++) throw ValidationError("NotInjective", "vertex map is not injective");
    }
    for (int e = 0; e < source.num_edges(); ++e) {
        int im = edge_map[e];
        if (im < 0 || im >= target.num_edges())
            throw ValidationError("BadMap", "embedding edge image out of range");
        if (seen_e[im]++) throw ValidationError("NotInjective", "edge map is not injective");
        int a = vertex_map[source.edge(e).u], b = vertex_map[source.edge(e).v];
        int x = target.edge(im).u, y = target.edge(im).v;
        if (!((a == x && b == y) || (a == y && b == x)))
            throw ValidationError("BadMap", "edge image has wrong endpoints");
    }
    Embedding res;
    res.source = std::move(source);
    res.target = std::move(target);
    res.vertex_map = std::move(vertex_map);
    res.edge_map = std::move(edge_map);
    return res;
}

OrderEmbedding OrderEmbedding::make(RootedTree source, RootedTree target,
                                    std::vector<int> vertex_map) {
    int n = source.tree.g.num_vertices();
    if (static_cast<int>(vertex_map.size()) != n)
        throw ValidationError("BadMap", "order embedding map size mismatch");
    std::vector<int> seen(target.tree.g.num_vertices(), 0);
    for (int im : vertex_map) {
        if (im < 0 || im >= target.tree.g.num_vertices())
            throw ValidationError("BadMap", "order embedding image out of range");
        if (seen[im]++)
            throw ValidationError("InvalidOrderEmbedding", "vertex map is not injective");
    }
    if (vertex_map[source.root] != target.root)
        throw ValidationError("InvalidOrderEmbedding", "root is not preserved");
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (source.leq(v, w) != target.leq(vertex_map[v], vertex_map[w]))
                throw ValidationError("InvalidOrderEmbedding",
                                      "map does not reflect the tree order both ways");
    OrderEmbedding res;
    res.source = std::move(source);
    res.target = std::move(target);
    res.vertex_map = std::move(vertex_map);
    return res;
}

RootedContraction RootedContraction::make(RootedTree source, RootedTree target,
                                          Contraction map) {
    if (!(map.source == source.tree.g) || !(map.target == target.tree.g))
        throw ValidationError("BadMap", "contraction does not connect the given rooted trees");
    if (map.vertex_map[source.root] != target.root)
        throw ValidationError("NotRootPreserving", "contraction does not preserve the root");
    RootedContraction res;
    res.source = std::move(source);
    res.target = std::move(target);
    res.map = std::move(map);
    return res;
}

Contraction make_contraction(const Graph& source, const Graph& target,
                             const std::vector<int>& vertex_map) {
    int ns = source.num_vertices(), nt = target.num_vertices();
    if (static_cast<int>(vertex_map.size()) != ns)
        throw ValidationError("BadMap", "vertex map size does not match the source");
    std::vector<int> fiber_size(nt, 0);
    for (int im : vertex_map) {
        if (im < 0 || im >= nt) throw ValidationError("BadMap", "vertex image out of range");
        ++fiber_size[im];
    }
    for (int w = 0; w < nt; ++w)
        if (fiber_size[w] == 0)
            throw ValidationError("NonSurjective",
                                  "no source vertex maps to '" + target.vertex_name(w) + "'");

    Contraction c;
    c.vertex_map = vertex_map;
    c.edge_map.assign(source.num_edges(), -1);

    // intra-fiber edges must span each fiber exactly
    UnionFind uf(ns);
    std::vector<int> intra_count(nt, 0);
    for (int e = 0; e < source.num_edges(); ++e) {
        const auto& ed = source.edge(e);
        if (ed.u != ed.v && vertex_map[ed.u] == vertex_map[ed.v]) {
            uf.unite(ed.u, ed.v);
            ++intra_count[vertex_map[ed.u]];
            c.contracted.push_back(e);
        }
    }
    std::vector<int> fiber_root(nt, -1);
    for (int v = 0; v < ns; ++v) {
        int w = vertex_map[v];
        int r = uf.find(v);
        if (fiber_root[w] == -1) fiber_root[w] = r;
        else if (fiber_root[w] != r)
            throw ValidationError("DisconnectedFiber",
                                  "fiber over '" + target.vertex_name(w) +
                                      "' is not connected by its contracted edges");
    }
    for (int w = 0; w < nt; ++w)
        if (intra_count[w] != fiber_size[w] - 1)
            throw ValidationError("EdgeMismatch",
                                  "fiber over '" + target.vertex_name(w) +
                                      "' has redundant internal edges");

    // cross edges match target edges between the image pair, in id order
    std::map<std::pair<int, int>, std::vector<int>> src_cross, tgt_cross;
    std::map<int, std::vector<int>> src_loops, tgt_loops;
    for (int e = 0; e < source.num_edges(); ++e) {
        const auto& ed = source.edge(e);
        if (ed.u == ed.v) {
            src_loops[vertex_map[ed.u]].push_back(e);
            continue;
        }
        int a = vertex_map[ed.u], b = vertex_map[ed.v];
        if (a == b) continue;  // handled above
        src_cross[{std::min(a, b), std::max(a, b)}].push_back(e);
    }
    for (int e = 0; e < target.num_edges(); ++e) {
        const auto& ed = target.edge(e);
        if (ed.u == ed.v) tgt_loops[ed.u].push_back(e);
        else tgt_cross[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
    }
    if (src_cross.size() != tgt_cross.size())
        throw ValidationError("EdgeMismatch", "cross edges do not match the target edge set");
    for (auto& [key, srcs] : src_cross) {
        auto it = tgt_cross.find(key);
        if (it == tgt_cross.end() || it->second.size() != srcs.size())
            throw ValidationError("EdgeMismatch",
                                  "no unique target edge for a non-contracted edge class");
        for (size_t i = 0; i < srcs.size(); ++i) c.edge_map[srcs[i]] = it->second[i];
    }
    size_t total_src_loops = 0;
    for (auto& [w, srcs] : src_loops) total_src_loops += srcs.size();
    size_t total_tgt_loops = 0;
    for (auto& [w, tgts] : tgt_loops) total_tgt_loops += tgts.size();
    if (total_src_loops != total_tgt_loops)
        throw ValidationError("EdgeMismatch", "loop counts do not match");
    for (auto& [w, srcs] : src_loops) {
        auto it = tgt_loops.find(w);
        if (it == tgt_loops.end() || it->second.size() != srcs.size())
            throw ValidationError("EdgeMismatch", "loops do not match at a merged vertex");
        for (size_t i = 0; i < srcs.size(); ++i) c.edge_map[srcs[i]] = it->second[i];
    }
    int mapped = 0;
    for (int v : c.edge_map)
        if (v >= 0) ++mapped;
    if (mapped != target.num_edges())
        throw ValidationError("EdgeMismatch", "edge map is not onto the target edges");

    c.source = source;
    c.target = target;
    return c;
}

Contraction make_contraction(const Graph& source, const Graph& target,
                             const std::vector<std::pair<std::string, std::string>>& vertex_map) {
    std::vector<int> vm(source.num_vertices(), -1);
    for (auto& [s, t] : vertex_map) {
        int si = source.vertex_index(s);
        if (vm[si] != -1) throw ValidationError("BadMap", "vertex '" + s + "' mapped twice");
        vm[si] = target.vertex_index(t);
    }
    for (int v = 0; v < source.num_vertices(); ++v)
        if (vm[v] == -1)
            throw ValidationError("BadMap",
                                  "vertex '" + source.vertex_name(v) + "' has no image");
    return make_contraction(source, target, vm);
}

Contraction compose(const Contraction& f, const Contraction& g) {
    if (!(f.target == g.source))
        throw ValidationError("Incomposable", "target of the first map differs from the source "
                                              "of the second");
    Contraction c;
    c.source = f.source;
    c.target = g.target;
    c.vertex_map.resize(f.source.num_vertices());
    for (int v = 0; v < f.source.num_vertices(); ++v)
        c.vertex_map[v] = g.vertex_map[f.vertex_map[v]];
    c.edge_map.assign(f.source.num_edges(), -1);
    for (int e = 0; e < f.source.num_edges(); ++e) {
        int mid = f.edge_map[e];
        if (mid >= 0) c.edge_map[e] = g.edge_map[mid];
        if (c.edge_map[e] < 0) c.contracted.push_back(e);
    }
    return c;
}

std::pair<Graph, Contraction> quotient_by_edges(const Graph& g,
                                                const std::vector<std::string>& edge_ids) {
    std::vector<char> in_s(g.num_edges(), 0);
    for (const auto& id : edge_ids) {
        int e = g.edge_index(id);
        if (in_s[e]) throw ValidationError("DuplicateEdge", "edge '" + id + "' listed twice");
        in_s[e] = 1;
    }
    UnionFind uf(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (in_s[e]) uf.unite(g.edge(e).u, g.edge(e).v);

    // blocks ordered by smallest member; block takes that member's name
    std::vector<int> block_of(g.num_vertices(), -1);
    std::vector<std::string> names;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int r = uf.find(v);
        if (block_of[r] < 0) {
            block_of[r] = static_cast<int>(names.size());
            names.push_back(g.vertex_name(v));
        }
        block_of[v] = block_of[r];
    }

    std::vector<std::tuple<std::string, std::string, std::string>> tedges;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (in_s[e]) continue;
        tedges.emplace_back(g.edge(e).id, names[block_of[g.edge(e).u]],
                            names[block_of[g.edge(e).v]]);
    }
    Graph target = Graph::make(names, tedges);

    Contraction c;
    c.source = g;
    c.target = target;
    c.vertex_map = block_of;
    c.edge_map.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (in_s[e]) c.contracted.push_back(e);
        else c.edge_map[e] = target.edge_index(g.edge(e).id);
    }
    return {std::move(target), std::move(c)};
}

std::pair<Graph, std::vector<std::pair<std::string, std::string>>> simplify(const Graph& g) {
    std::map<std::pair<int, int>, int> rep;  // endpoint pair -> representative edge
    std::vector<std::pair<std::string, std::string>> cls;
    std::vector<std::tuple<std::string, std::string, std::string>> kept;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        if (ed.u == ed.v) continue;
        auto key = std::make_pair(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
        auto [it, fresh] = rep.emplace(key, e);
        if (fresh)
            kept.emplace_back(ed.id, g.vertex_name(ed.u), g.vertex_name(ed.v));
        cls.emplace_back(ed.id, g.edge(it->second).id);
    }
    return {Graph::make(g.vertex_names(), kept), std::move(cls)};
}

OrderEmbedding rooted_dual(const RootedContraction& phi) {
    const RootedTree& s = phi.source;
    const RootedTree& t = phi.target;
    std::vector<int> vm(t.tree.g.num_vertices(), -1);
    for (int w = 0; w < t.tree.g.num_vertices(); ++w) {
        int best = -1;
        for (int v = 0; v < s.tree.g.num_vertices(); ++v) {
            if (phi.map.vertex_map[v] != w) continue;
            if (best < 0 || s.leq(best, v)) best = v;
        }
        vm[w] = best;
    }
    return OrderEmbedding::make(t, s, vm);
}

RootedContraction rooted_dual(const OrderEmbedding& psi) {
    const RootedTree& s = psi.source;  // small tree
    const RootedTree& t = psi.target;  // big tree
    std::vector<int> vm(t.tree.g.num_vertices(), -1);
    for (int w = 0; w < t.tree.g.num_vertices(); ++w) {
        int best = -1;
        for (int u = 0; u < s.tree.g.num_vertices(); ++u) {
            if (!t.leq(w, psi.vertex_map[u])) continue;
            if (best < 0 || s.leq(u, best)) best = u;
        }
        if (best < 0)
            throw InternalError("BadDual", "no vertex image lies above some vertex");
        vm[w] = best;
    }
    Contraction c = make_contraction(t.tree.g, s.tree.g, vm);
    return RootedContraction::make(t, s, std::move(c));
}

OITuple OITuple::make(std::vector<std::vector<int>> maps, std::vector<int> n) {
    if (maps.size() != n.size())
        throw ValidationError("InvalidOIMap", "component count mismatch");
    for (size_t i = 0; i < maps.size(); ++i) {
        int prev = 0;
        for (int v : maps[i]) {
            if (v <= prev || v > n[i])
                throw ValidationError("InvalidOIMap",
                                      "map component is not strictly increasing into range");
            prev = v;
        }
    }
    OITuple t;
    t.maps = std::move(maps);
    t.n = std::move(n);
    return t;
}

OITuple OITuple::identity(const std::vector<int>& m) {
    std::vector<std::vector<int>> maps;
    for (int mi : m) {
        std::vector<int> f(mi);
        std::iota(f.begin(), f.end(), 1);
        maps.push_back(std::move(f));
    }
    return make(std::move(maps), m);
}

std::vector<int> OITuple::domain_sizes() const {
    std::vector<int> m;
    for (const auto& f : maps) m.push_back(static_cast<int>(f.size()));
    return m;
}

OITuple OITuple::compose_after(const OITuple& g) const {
    if (g.n != domain_sizes())
        throw ValidationError("Incomposable", "inner codomain differs from outer domain");
    std::vector<std::vector<int>> comp;
    for (size_t i = 0; i < maps.size(); ++i) {
        std::vector<int> f;
        for (int v : g.maps[i]) f.push_back(maps[i][v - 1]);
        comp.push_back(std::move(f));
    }
    return make(std::move(comp), n);
}

}  // namespace treecat
