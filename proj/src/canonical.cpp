#include "treecat/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace treecat {

namespace {

std::string escape_label(const std::string& s) {
    return "[" + std::to_string(s.size()) + ":" + s + "]";
}

// Subtree code and automorphism count at v, walking away from `parent`.
std::pair<std::string, Int> ahu(const Graph& g, int v, int parent,
                                const std::vector<std::string>* labels) {
    std::vector<std::pair<std::string, Int>> kids;
    for (int w : g.neighbors(v))
        if (w != parent) kids.push_back(ahu(g, w, v, labels));
    std::sort(kids.begin(), kids.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string code = "(";
    if (labels) code += escape_label((*labels)[v]);
    Int aut = 1;
    size_t i = 0;
    while (i < kids.size()) {
        size_t j = i;
        while (j < kids.size() && kids[j].first == kids[i].first) ++j;
        aut *= factorial(static_cast<long long>(j - i));
        for (size_t k = i; k < j; ++k) {
            aut *= kids[k].second;
            code += kids[k].first;
        }
        i = j;
    }
    code += ")";
    return {code, aut};
}

std::vector<int> tree_centers(const Graph& g) {
    int n = g.num_vertices();
    if (n == 1) return {0};
    std::vector<int> deg(n), order;
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<int> layer;
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int left = n;
    while (left > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            --left;
            for (int w : g.neighbors(v)) {
                if (removed[w]) continue;
                if (--deg[w] == 1) next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    std::vector<int> centers;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) centers.push_back(v);
    return centers;
}

// (code, aut) of an unrooted tree, optionally label-decorated.
std::pair<std::string, Int> tree_code_aut(const Graph& g,
                                          const std::vector<std::string>* labels) {
    auto centers = tree_centers(g);
    if (centers.size() == 1) {
        auto [code, aut] = ahu(g, centers[0], -1, labels);
        return {"t1" + code, aut};
    }
    auto a = ahu(g, centers[0], centers[1], labels);
    auto b = ahu(g, centers[1], centers[0], labels);
    if (b.first < a.first) std::swap(a, b);
    Int aut = a.second * b.second;
    if (a.first == b.first) aut *= 2;
    return {"t2" + a.first + b.first, aut};
}

int tree_edge_orbits(const Graph& g) {
    std::set<std::pair<std::string, std::string>> codes;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto cu = ahu(g, g.edge(e).u, g.edge(e).v, nullptr).first;
        auto cv = ahu(g, g.edge(e).v, g.edge(e).u, nullptr).first;
        if (cv < cu) std::swap(cu, cv);
        codes.emplace(cu, cv);
    }
    return static_cast<int>(codes.size());
}

struct GeneralCanon {
    std::string code;
    Int aut = 1;
    int edge_orbits = 0;
};

GeneralCanon general_canonical(const Graph& g, int max_vertices) {
    int n = g.num_vertices();
    if (n > max_vertices)
        throw GuardError("TooLarge", "graph has " + std::to_string(n) +
                                         " vertices, limit is " + std::to_string(max_vertices));
    GeneralCanon out;
    if (n == 0) {
        out.code = "g0:";
        return out;
    }
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    std::vector<int> loops(n, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (u == v) ++loops[u];
        else {
            ++mult[u][v];
            ++mult[v][u];
        }
    }

    // iterated neighborhood refinement
    std::vector<std::string> color(n);
    for (int v = 0; v < n; ++v)
        color[v] = "d" + std::to_string(g.degree(v)) + "l" + std::to_string(loops[v]);
    for (int round = 0; round < n; ++round) {
        std::vector<std::string> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::string> nb;
            for (int w = 0; w < n; ++w)
                if (mult[v][w] > 0)
                    nb.push_back("m" + std::to_string(mult[v][w]) + color[w]);
            std::sort(nb.begin(), nb.end());
            next[v] = color[v] + "|";
            for (auto& s : nb) next[v] += s;
        }
        if (next == color) break;
        color = std::move(next);
    }

    // twin groups: interchangeable vertices, ascending order fixed in search
    std::vector<int> twin(n);
    std::iota(twin.begin(), twin.end(), 0);
    auto find_twin = [&](int x) {
        while (twin[x] != x) x = twin[x] = twin[twin[x]];
        return x;
    };
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (loops[u] != loops[v] || color[u] != color[v]) continue;
            bool tw = true;
            for (int x = 0; x < n && tw; ++x)
                if (x != u && x != v && mult[u][x] != mult[v][x]) tw = false;
            if (tw) twin[find_twin(u)] = find_twin(v);
        }
    std::vector<Int> twin_factor;
    {
        std::map<int, int> sizes;
        for (int v = 0; v < n; ++v) ++sizes[find_twin(v)];
        for (auto& [root, sz] : sizes) twin_factor.push_back(factorial(sz));
    }

    // color classes in canonical order
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return color[a] < color[b]; });
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < n;) {
        int j = i;
        std::vector<int> cls;
        while (j < n && color[verts[j]] == color[verts[i]]) cls.push_back(verts[j++]);
        classes.push_back(std::move(cls));
        i = j;
    }

    std::vector<int> pos(n, -1);          // vertex -> position
    std::vector<char> placed(n, 0);
    std::string best;
    std::vector<std::vector<int>> best_labelings;

    auto emit = [&]() {
        std::vector<std::tuple<int, int, int>> triples;
        for (int u = 0; u < n; ++u) {
            if (loops[u]) triples.emplace_back(pos[u], pos[u], loops[u]);
            for (int v = u + 1; v < n; ++v)
                if (mult[u][v])
                    triples.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]),
                                         mult[u][v]);
        }
        std::sort(triples.begin(), triples.end());
        std::string code = "g" + std::to_string(n) + ":";
        for (auto& [a, b, m] : triples)
            code += std::to_string(a) + "-" + std::to_string(b) + "x" + std::to_string(m) + ";";
        if (best.empty() || code < best) {
            best = code;
            best_labelings.clear();
            best_labelings.push_back(pos);
        } else if (code == best) {
            best_labelings.push_back(pos);
        }
    };

    int base = 0;
    std::vector<int> class_base(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) {
        class_base[c] = base;
        base += static_cast<int>(classes[c].size());
    }

    std::function<void(size_t, int)> rec = [&](size_t c, int offset) {
        if (c == classes.size()) {
            emit();
            return;
        }
        const auto& cls = classes[c];
        if (offset == static_cast<int>(cls.size())) {
            rec(c + 1, 0);
            return;
        }
        for (int v : cls) {
            if (placed[v]) continue;
            // twins are placed in ascending original order only
            bool skip = false;
            for (int u : cls)
                if (!placed[u] && u < v && find_twin(u) == find_twin(v)) skip = true;
            if (skip) continue;
            placed[v] = 1;
            pos[v] = class_base[c] + offset;
            rec(c, offset + 1);
            placed[v] = 0;
            pos[v] = -1;
        }
    };
    rec(0, 0);

    out.code = best;
    out.aut = Int(best_labelings.size());
    for (const auto& f : twin_factor) out.aut *= f;

    // edge orbits under the full automorphism group: generators are the
    // minimal labelings composed with the first one, plus twin swaps
    std::map<std::pair<int, int>, int> cls_id;
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = std::min(g.edge(e).u, g.edge(e).v), v = std::max(g.edge(e).u, g.edge(e).v);
        cls_id.emplace(std::make_pair(u, v), static_cast<int>(cls_id.size()));
    }
    std::vector<int> orb(cls_id.size());
    std::iota(orb.begin(), orb.end(), 0);
    auto find_orb = [&](int x) {
        while (orb[x] != x) x = orb[x] = orb[orb[x]];
        return x;
    };
    auto apply_perm = [&](const std::vector<int>& sigma) {
        for (auto& [pair, id] : cls_id) {
            int a = sigma[pair.first], b = sigma[pair.second];
            auto it = cls_id.find({std::min(a, b), std::max(a, b)});
            if (it == cls_id.end())
                throw InternalError("BadAutomorphism", "labeling does not preserve edges");
            orb[find_orb(id)] = find_orb(it->second);
        }
    };
    const auto& l0 = best_labelings.front();
    std::vector<int> inv_l(n);
    for (const auto& l : best_labelings) {
        for (int v = 0; v < n; ++v) inv_l[l[v]] = v;
        std::vector<int> sigma(n);
        for (int v = 0; v < n; ++v) sigma[v] = inv_l[l0[v]];
        apply_perm(sigma);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (find_twin(u) == find_twin(v)) {
                std::vector<int> sigma(n);
                std::iota(sigma.begin(), sigma.end(), 0);
                std::swap(sigma[u], sigma[v]);
                apply_perm(sigma);
            }
    std::set<int> roots;
    for (auto& [pair, id] : cls_id) roots.insert(find_orb(id));
    out.edge_orbits = static_cast<int>(roots.size());
    return out;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g, int max_vertices) {
    CanonicalForm res;
    if (g.is_tree_shape()) {
        auto [code, aut] = tree_code_aut(g, nullptr);
        res.code = code;
        res.aut_count = aut;
        res.edge_orbit_count = tree_edge_orbits(g);
        return res;
    }
    auto gc = general_canonical(g, max_vertices);
    res.code = gc.code;
    res.aut_count = gc.aut;
    res.edge_orbit_count = gc.edge_orbits;
    return res;
}

CanonicalForm canonical_form(const RootedTree& rt) {
    const Graph& g = rt.tree.g;
    CanonicalForm res;
    auto [code, aut] = ahu(g, rt.root, -1, nullptr);
    res.code = "r" + code;
    res.aut_count = aut;

    // vertex orbits top-down: same subtree code under autos of the parent orbit
    int n = g.num_vertices();
    std::vector<std::string> sub(n);
    std::function<std::string(int, int)> down = [&](int v, int parent) {
        std::vector<std::string> kids;
        for (int w : g.neighbors(v))
            if (w != parent) kids.push_back(down(w, v));
        std::sort(kids.begin(), kids.end());
        std::string c = "(";
        for (auto& k : kids) c += k;
        c += ")";
        sub[v] = c;
        return c;
    };
    down(rt.root, -1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rt.depth[a] < rt.depth[b]; });
    std::map<std::pair<int, std::string>, int> orbit_ids;
    std::vector<int> orbit(n, -1);
    orbit[rt.root] = 0;
    int next_id = 1;
    for (int v : order) {
        if (v == rt.root) continue;
        auto key = std::make_pair(orbit[rt.parent[v]], sub[v]);
        auto [it, fresh] = orbit_ids.emplace(key, next_id);
        if (fresh) ++next_id;
        orbit[v] = it->second;
    }
    std::set<int> edge_orbits;
    for (int v = 0; v < n; ++v)
        if (v != rt.root) edge_orbits.insert(orbit[v]);
    res.edge_orbit_count = static_cast<int>(edge_orbits.size());
    return res;
}

std::string labeled_tree_code(const Tree& t, const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != t.g.num_vertices())
        throw ValidationError("BadMap", "one label per vertex required");
    return tree_code_aut(t.g, &labels).first;
}

bool isomorphic(const Graph& a, const Graph& b, int max_vertices) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    return canonical_form(a, max_vertices).code == canonical_form(b, max_vertices).code;
}

}  // namespace treecat
