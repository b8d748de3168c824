#include "treecat/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace treecat {

std::vector<std::vector<int>> graph_isomorphisms(const Graph& a, const Graph& b) {
    std::vector<std::vector<int>> out;
    int n = a.num_vertices();
    if (n != b.num_vertices() || a.num_edges() != b.num_edges()) return out;
    auto mult_of = [](const Graph& g) {
        int n = g.num_vertices();
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        for (int e = 0; e < g.num_edges(); ++e) {
            int u = g.edge(e).u, v = g.edge(e).v;
            ++m[u][v];
            if (u != v) ++m[v][u];
        }
        return m;
    };
    auto ma = mult_of(a), mb = mult_of(b);
    std::vector<int> sigma(n, -1);
    std::vector<char> used(n, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            out.push_back(sigma);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || a.degree(v) != b.degree(w) || ma[v][v] != mb[w][w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (ma[v][u] != mb[w][sigma[u]]) ok = false;
            if (!ok) continue;
            sigma[v] = w;
            used[w] = 1;
            rec(v + 1);
            used[w] = 0;
            sigma[v] = -1;
        }
    };
    rec(0);
    return out;
}

std::vector<Contraction> hom_contractions(const Tree& source, const Tree& target) {
    std::vector<Contraction> out;
    int ns = source.g.num_vertices(), nt = target.g.num_vertices();
    if (ns < nt) return out;
    int k = ns - nt;
    int m = source.g.num_edges();
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    auto advance = [&]() {
        int i = k - 1;
        while (i >= 0 && pick[i] == m - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };
    if (k > m) return out;
    do {
        std::vector<std::string> ids;
        for (int i : pick) ids.push_back(source.g.edge(i).id);
        auto [q, pi] = quotient_by_edges(source.g, ids);
        for (const auto& sigma : graph_isomorphisms(q, target.g)) {
            auto iso = make_contraction(q, target.g, sigma);
            out.push_back(compose(pi, iso));
        }
    } while (k > 0 && advance());
    return out;
}

Int subtree_count(const Tree& t) {
    const Graph& g = t.g;
    int n = g.num_vertices();
    if (n == 1) return 1;
    RootedTree rt = RootedTree::make(t, 0);
    // rooted[v] = number of subtrees in which v is the vertex closest to the root
    std::vector<Int> rooted(n, 1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rt.depth[a] > rt.depth[b]; });
    Int total = 0;
    for (int v : order) {
        for (int w : g.neighbors(v))
            if (rt.parent[w] == v) rooted[v] *= rooted[w] + 1;
        total += rooted[v];
    }
    return total;
}

std::vector<std::vector<int>> subtree_list(const Tree& t) {
    const Graph& g = t.g;
    int n = g.num_vertices();
    if (n > 24) throw GuardError("TooLarge", "subtree listing limited to 24 vertices");
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int root = -1;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) {
                root = v;
                break;
            }
        std::vector<int> stack{root}, seen;
        std::vector<char> vis(n, 0);
        vis[root] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            seen.push_back(v);
            for (int w : g.neighbors(v))
                if ((mask & (1u << w)) && !vis[w]) {
                    vis[w] = 1;
                    stack.push_back(w);
                }
        }
        if (seen.size() == static_cast<size_t>(std::popcount(mask))) {
            std::sort(seen.begin(), seen.end());
            out.push_back(std::move(seen));
        }
    }
    return out;
}

namespace {

Tree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    int id = 0;
    for (auto [a, b] : edges)
        es.emplace_back("e" + std::to_string(id++), names[a], names[b]);
    return Tree::make(Graph::make(names, es));
}

// cheap AHU on an adjacency list, interned level codes
struct Interner {
    std::map<std::vector<int>, int> table;
    int get(std::vector<int> key) {
        auto [it, fresh] = table.emplace(std::move(key), static_cast<int>(table.size()));
        return it->second;
    }
};

int ahu_int(const std::vector<std::vector<int>>& adj, int v, int parent, Interner& in) {
    std::vector<int> kids;
    for (int w : adj[v])
        if (w != parent) kids.push_back(ahu_int(adj, w, v, in));
    std::sort(kids.begin(), kids.end());
    return in.get(std::move(kids));
}

std::pair<int, int> centers_of(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    if (n == 1) return {0, -1};
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] <= 1) layer.push_back(v);
    }
    int left = n;
    while (left > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            --left;
            for (int w : adj[v])
                if (!removed[w] && --deg[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::vector<int> c;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) c.push_back(v);
    return {c[0], c.size() > 1 ? c[1] : -1};
}

}  // namespace

std::vector<Tree> all_trees(int n) {
    if (n < 1) throw ValidationError("BadSize", "trees need at least one vertex");
    std::vector<Tree> out;
    if (n == 1) {
        out.push_back(tree_from_edges(1, {}));
        return out;
    }
    if (n == 2) {
        out.push_back(tree_from_edges(2, {{0, 1}}));
        return out;
    }
    Interner interner;
    std::set<std::tuple<int, int, int>> seen;
    std::vector<int> prufer(n - 2, 0);
    std::vector<int> degree(n);
    std::vector<std::vector<int>> adj(n);
    for (;;) {
        for (int v = 0; v < n; ++v) {
            degree[v] = 1;
            adj[v].clear();
        }
        for (int x : prufer) ++degree[x];
        std::vector<std::pair<int, int>> edges;
        for (int x : prufer) {
            int leaf = 0;
            while (degree[leaf] != 1) ++leaf;
            edges.emplace_back(leaf, x);
            degree[leaf] = 0;
            --degree[x];
        }
        int a = -1, b = -1;
        for (int v = 0; v < n; ++v)
            if (degree[v] == 1) (a < 0 ? a : b) = v;
        edges.emplace_back(a, b);
        for (auto [x, y] : edges) {
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        auto [c1, c2] = centers_of(adj);
        std::tuple<int, int, int> key;
        if (c2 < 0) {
            key = {1, ahu_int(adj, c1, -1, interner), -1};
        } else {
            int ca = ahu_int(adj, c1, c2, interner);
            int cb = ahu_int(adj, c2, c1, interner);
            key = {2, std::min(ca, cb), std::max(ca, cb)};
        }
        if (seen.insert(key).second) out.push_back(tree_from_edges(n, edges));
        int i = n - 3;
        while (i >= 0 && prufer[i] == n - 1) prufer[i--] = 0;
        if (i < 0) break;
        ++prufer[i];
    }
    return out;
}

}  // namespace treecat
