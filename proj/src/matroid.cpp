#include "treecat/matroid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "treecat/canonical.hpp"
#include "treecat/errors.hpp"
#include "treecat/morphisms.hpp"

namespace treecat {

namespace {

// renumber so blocks appear in order of their smallest vertex
std::vector<int> normalize_partition(const std::vector<int>& part) {
    std::vector<int> remap(part.size(), -1);
    std::vector<int> out(part.size());
    int next = 0;
    for (size_t v = 0; v < part.size(); ++v) {
        if (remap[part[v]] < 0) remap[part[v]] = next++;
        out[v] = remap[part[v]];
    }
    return out;
}

Flat flat_from_partition(const Graph& g, const std::vector<int>& part) {
    Flat f;
    f.partition = normalize_partition(part);
    for (int e = 0; e < g.num_edges(); ++e)
        if (f.partition[g.edge(e).u] == f.partition[g.edge(e).v]) f.edges.push_back(e);
    int blocks = *std::max_element(f.partition.begin(), f.partition.end()) + 1;
    f.rank = g.num_vertices() - blocks;
    f.corank = matroid_rank(g) - f.rank;
    return f;
}

bool blocks_connected(const Graph& g, const std::vector<int>& part, int nblocks) {
    // union-find restricted to intra-block edges, then every block must be
    // a single group
    std::vector<int> uf(g.num_vertices());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (part[u] == part[v]) uf[find(u)] = find(v);
    }
    std::vector<int> rep(nblocks, -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        int r = find(v);
        if (rep[part[v]] < 0)
            rep[part[v]] = r;
        else if (rep[part[v]] != r)
            return false;
    }
    return true;
}

Graph delete_edge(const Graph& g, int e) {
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (int f = 0; f < g.num_edges(); ++f) {
        if (f == e) continue;
        edges.emplace_back(g.edge(f).id, g.vertex_name(g.edge(f).u),
                           g.vertex_name(g.edge(f).v));
    }
    return Graph::make(g.vertex_names(), edges);
}

bool is_bridge(const Graph& g, int e) {
    if (g.is_loop(e)) return false;
    return delete_edge(g, e).num_components() > g.num_components();
}

IntPolynomial chi_impl(const Graph& g, int max_vertices,
                       std::map<std::string, IntPolynomial>& memo) {
    if (g.has_loops()) return IntPolynomial();
    auto [s, merged] = simplify(g);
    if (s.num_edges() == 0) return IntPolynomial(Int(1));
    std::string key = canonical_form(s, max_vertices).code;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    IntPolynomial res;
    Graph contracted = quotient_by_edges(s, {s.edge(0).id}).first;
    if (is_bridge(s, 0)) {
        IntPolynomial tm1 = IntPolynomial::monomial(1, 1) - IntPolynomial(Int(1));
        res = tm1 * chi_impl(contracted, max_vertices, memo);
    } else {
        res = chi_impl(delete_edge(s, 0), max_vertices, memo) -
              chi_impl(contracted, max_vertices, memo);
    }
    memo.emplace(std::move(key), res);
    return res;
}

IntPolynomial kl_impl(const Graph& g, int max_vertices,
                      std::map<std::string, IntPolynomial>& memo,
                      std::map<std::string, IntPolynomial>& chi_memo) {
    auto [s, merged] = simplify(g);
    int rk = matroid_rank(s);
    if (rk == 0) return IntPolynomial(Int(1));
    std::string key = canonical_form(s, max_vertices).code;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    FlatLattice lat = flats(s, max_vertices);
    IntPolynomial rhs;
    for (const Flat& f : lat.flats) {
        if (f.rank == 0) continue;
        MinorPair mp = minor(s, f);
        IntPolynomial chi_f = chi_impl(mp.restriction, max_vertices, chi_memo);
        IntPolynomial p_f = kl_impl(mp.contraction, max_vertices, memo, chi_memo);
        rhs = rhs + chi_f * p_f;
    }

    // the flat-sum right side must be anti-palindromic of weight rk; a
    // violation certifies a bug somewhere upstream, so fail hard
    for (int j = 0; j <= rk; ++j)
        if (rhs.coefficient(j) != -rhs.coefficient(rk - j))
            throw InternalError("AntiPalindromyViolation",
                                "flat-sum polynomial is not anti-palindromic");

    IntPolynomial p;
    for (int j = 0; 2 * j < rk; ++j) p = p + IntPolynomial::monomial(-rhs.coefficient(j), j);
    if (p.coefficient(0) != 1)
        throw InternalError("BadConstantTerm", "solved polynomial has constant term != 1");
    memo.emplace(std::move(key), p);
    return p;
}

}  // namespace

int FlatLattice::bottom() const {
    for (size_t i = 0; i < flats.size(); ++i)
        if (flats[i].rank == 0) return static_cast<int>(i);
    throw InternalError("NoBottom", "lattice has no rank-0 flat");
}

std::vector<int> FlatLattice::flats_of_rank(int r) const {
    std::vector<int> out;
    for (size_t i = 0; i < flats.size(); ++i)
        if (flats[i].rank == r) out.push_back(static_cast<int>(i));
    return out;
}

bool FlatLattice::leq(int a, int b) const {
    const auto& pa = flats[a].partition;
    const auto& pb = flats[b].partition;
    std::vector<int> image(pa.size(), -1);
    for (size_t v = 0; v < pa.size(); ++v) {
        if (image[pa[v]] < 0)
            image[pa[v]] = pb[v];
        else if (image[pa[v]] != pb[v])
            return false;
    }
    return true;
}

int matroid_rank(const Graph& g) { return g.num_vertices() - g.num_components(); }

FlatLattice flats(const Graph& g, int max_vertices) {
    if (g.num_vertices() > max_vertices)
        throw GuardError("TooLarge", "flat enumeration limited to " +
                                         std::to_string(max_vertices) + " vertices");
    FlatLattice lat;
    lat.graph = g;
    lat.matroid_rank = matroid_rank(g);
    int n = g.num_vertices();
    if (n == 0) {
        Flat f;
        f.rank = 0;
        f.corank = 0;
        lat.flats.push_back(std::move(f));
        return lat;
    }
    // restricted growth strings enumerate set partitions; keep the connected ones
    std::vector<int> a(n, 0);
    for (;;) {
        int nblocks = *std::max_element(a.begin(), a.end()) + 1;
        if (blocks_connected(g, a, nblocks)) lat.flats.push_back(flat_from_partition(g, a));
        int pos = n - 1;
        while (pos > 0) {
            int cap = *std::max_element(a.begin(), a.begin() + pos) + 1;
            if (a[pos] < cap) break;
            a[pos] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++a[pos];
    }
    std::sort(lat.flats.begin(), lat.flats.end(), [](const Flat& x, const Flat& y) {
        if (x.rank != y.rank) return x.rank < y.rank;
        return x.partition < y.partition;
    });
    return lat;
}

Flat closure(const Graph& g, const std::vector<int>& edge_indices) {
    std::vector<int> uf(g.num_vertices());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int e : edge_indices) {
        if (e < 0 || e >= g.num_edges())
            throw ValidationError("UnknownEdge", "edge index out of range");
        uf[find(g.edge(e).u)] = find(g.edge(e).v);
    }
    std::vector<int> part(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) part[v] = find(v);
    return flat_from_partition(g, part);
}

bool is_flat(const Graph& g, const Flat& f) {
    if (static_cast<int>(f.partition.size()) != g.num_vertices()) return false;
    if (f.partition != normalize_partition(f.partition)) return false;
    int nblocks = f.partition.empty()
                      ? 0
                      : *std::max_element(f.partition.begin(), f.partition.end()) + 1;
    if (!blocks_connected(g, f.partition, nblocks)) return false;
    std::vector<int> edges;
    for (int e = 0; e < g.num_edges(); ++e)
        if (f.partition[g.edge(e).u] == f.partition[g.edge(e).v]) edges.push_back(e);
    if (edges != f.edges) return false;
    if (f.rank != g.num_vertices() - nblocks) return false;
    return f.corank == matroid_rank(g) - f.rank;
}

MinorPair minor(const Graph& g, const Flat& f) {
    if (!is_flat(g, f)) throw ValidationError("NotAFlat", "argument is not a flat");
    MinorPair mp;
    std::vector<std::tuple<std::string, std::string, std::string>> kept;
    std::vector<std::string> ids;
    for (int e : f.edges) {
        kept.emplace_back(g.edge(e).id, g.vertex_name(g.edge(e).u),
                          g.vertex_name(g.edge(e).v));
        ids.push_back(g.edge(e).id);
    }
    mp.restriction = Graph::make(g.vertex_names(), kept);
    mp.contraction = quotient_by_edges(g, ids).first;
    return mp;
}

IntPolynomial characteristic_polynomial(const Graph& g, int max_vertices) {
    if (g.num_vertices() > max_vertices)
        throw GuardError("TooLarge", "characteristic polynomial limited to " +
                                         std::to_string(max_vertices) + " vertices");
    static std::map<std::string, IntPolynomial> memo;
    return chi_impl(g, max_vertices, memo);
}

std::vector<Int> os_dimensions(const Graph& g, int max_vertices) {
    IntPolynomial chi = characteristic_polynomial(g, max_vertices);
    int rk = matroid_rank(g);
    std::vector<Int> dims(rk + 1);
    for (int d = 0; d <= rk; ++d) dims[d] = abs(chi.coefficient(rk - d));
    return dims;
}

IntPolynomial kl_polynomial(const Graph& g, int max_vertices) {
    if (g.num_vertices() > max_vertices)
        throw GuardError("TooLarge", "Kazhdan-Lusztig computation limited to " +
                                         std::to_string(max_vertices) + " vertices");
    static std::map<std::string, IntPolynomial> memo;
    static std::map<std::string, IntPolynomial> chi_memo;
    return kl_impl(g, max_vertices, memo, chi_memo);
}

Int ih_dimension(const Graph& g, int i, int max_vertices) {
    if (i < 0) return 0;
    return kl_polynomial(g, max_vertices).coefficient(i);
}

}  // namespace treecat
