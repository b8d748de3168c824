#include "treecat/swiatkowski.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "treecat/constructions.hpp"

namespace treecat {

namespace {

std::vector<std::vector<int>> monomials_of_degree(int nedges, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0) return out;
    if (nedges == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur(nedges, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == nedges - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int a = rem; a >= 0; --a) {
            cur[pos] = a;
            rec(pos + 1, rem - a);
        }
        cur[pos] = 0;
    };
    rec(0, d);
    return out;
}

Int count_piece(const Graph& g, const std::vector<int>& eligible, int i, int n) {
    if (i < 0 || n < 0 || i > n || i > static_cast<int>(eligible.size())) return 0;
    std::vector<Int> coef(i + 1, Int(0));
    coef[0] = 1;
    for (int v : eligible) {
        Int w = g.degree(v) - 1;
        for (int k = std::min<int>(i, static_cast<int>(coef.size()) - 1); k >= 1; --k)
            coef[k] += coef[k - 1] * w;
    }
    return coef[i] * monomial_count(g.num_edges(), n - i);
}

}  // namespace

SwiatkowskiComplex SwiatkowskiComplex::build(const Graph& g, int n_max, int i_max,
                                             long long max_generators) {
    if (n_max < 0 || i_max < 0)
        throw ValidationError("OutOfBounds", "complex bounds must be nonnegative");
    SwiatkowskiComplex sc;
    sc.g_ = g;
    sc.n_max_ = n_max;
    sc.i_max_ = i_max;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) >= 2) sc.eligible_.push_back(v);

    int i_top = std::min(i_max + 1, static_cast<int>(sc.eligible_.size()));
    Int total = 0;
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i <= std::min(i_top, n); ++i)
            total += count_piece(g, sc.eligible_, i, n);
    if (total > max_generators)
        throw GuardError("BoundsTooLarge", "complex needs " + total.str() +
                                               " generators, limit " +
                                               std::to_string(max_generators));

    std::map<int, std::vector<std::vector<int>>> monos_by_degree;
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i <= std::min(i_top, n); ++i) {
            int d = n - i;
            auto mit = monos_by_degree.find(d);
            if (mit == monos_by_degree.end())
                mit = monos_by_degree.emplace(d, monomials_of_degree(g.num_edges(), d)).first;
            const auto& monos = mit->second;

            std::vector<Generator> gens;
            auto& idx = sc.index_[{i, n}];
            std::vector<int> comb(i);
            std::iota(comb.begin(), comb.end(), 0);
            for (;;) {
                std::vector<int> verts(i);
                for (int t = 0; t < i; ++t) verts[t] = sc.eligible_[comb[t]];
                std::vector<int> js(i, 2);
                for (;;) {
                    for (const auto& mono : monos) {
                        Generator gen{mono, verts, js};
                        idx.emplace(gen, static_cast<long long>(gens.size()));
                        gens.push_back(std::move(gen));
                    }
                    int pos = i - 1;
                    while (pos >= 0 && js[pos] == g.degree(verts[pos])) {
                        js[pos] = 2;
                        --pos;
                    }
                    if (pos < 0) break;
                    ++js[pos];
                }
                int pos = i - 1;
                while (pos >= 0 &&
                       comb[pos] == static_cast<int>(sc.eligible_.size()) - i + pos)
                    --pos;
                if (pos < 0) break;
                ++comb[pos];
                for (int q = pos + 1; q < i; ++q) comb[q] = comb[q - 1] + 1;
            }
            sc.gens_[{i, n}] = std::move(gens);
        }
    }

    for (int n = 0; n <= n_max; ++n) {
        for (int i = 1; i <= std::min(i_top, n); ++i) {
            const auto& gens = sc.gens_.at({i, n});
            SparseIntMatrix b(static_cast<int>(sc.rank(i - 1, n)),
                              static_cast<int>(gens.size()));
            for (size_t col = 0; col < gens.size(); ++col) {
                const Generator& gen = gens[col];
                for (int t = 0; t < i; ++t) {
                    int v = gen.verts[t];
                    auto he = g.half_edges_at(v);
                    int ej = he[gen.diffs[t] - 1].edge;
                    int e1 = he[0].edge;
                    if (ej == e1) continue;
                    Int sign = (t % 2 == 0) ? 1 : -1;
                    Generator tgt;
                    tgt.mono = gen.mono;
                    tgt.verts.reserve(i - 1);
                    tgt.diffs.reserve(i - 1);
                    for (int s = 0; s < i; ++s) {
                        if (s == t) continue;
                        tgt.verts.push_back(gen.verts[s]);
                        tgt.diffs.push_back(gen.diffs[s]);
                    }
                    ++tgt.mono[ej];
                    b.add(static_cast<int>(sc.generator_index(i - 1, n, tgt)),
                          static_cast<int>(col), sign);
                    --tgt.mono[ej];
                    ++tgt.mono[e1];
                    b.add(static_cast<int>(sc.generator_index(i - 1, n, tgt)),
                          static_cast<int>(col), -sign);
                }
            }
            b.finalize();
            sc.boundaries_[{i, n}] = std::move(b);
        }
    }
    return sc;
}

bool SwiatkowskiComplex::stored(int i, int n) const {
    return gens_.find({i, n}) != gens_.end();
}

void SwiatkowskiComplex::require_piece(int i, int n) const {
    if (n < 0 || i < 0) return;
    if (i > n || i > static_cast<int>(eligible_.size())) return;  // provably zero
    if (n > n_max_ || i > i_max_ + 1)
        throw ValidationError("OutOfBounds", "bidegree (" + std::to_string(i) + "," +
                                                 std::to_string(n) +
                                                 ") outside built bounds");
}

long long SwiatkowskiComplex::rank(int i, int n) const {
    require_piece(i, n);
    auto it = gens_.find({i, n});
    return it == gens_.end() ? 0 : static_cast<long long>(it->second.size());
}

const std::vector<SwiatkowskiComplex::Generator>& SwiatkowskiComplex::generators(
    int i, int n) const {
    static const std::vector<Generator> empty;
    require_piece(i, n);
    auto it = gens_.find({i, n});
    return it == gens_.end() ? empty : it->second;
}

long long SwiatkowskiComplex::generator_index(int i, int n, const Generator& gen) const {
    auto it = index_.find({i, n});
    if (it == index_.end()) throw ValidationError("OutOfBounds", "piece not stored");
    auto git = it->second.find(gen);
    if (git == it->second.end())
        throw InternalError("UnknownGenerator", "generator not in basis");
    return git->second;
}

SparseIntMatrix SwiatkowskiComplex::boundary(int i, int n) const {
    long long r_to = rank(i - 1, n);
    long long r_from = rank(i, n);
    auto it = boundaries_.find({i, n});
    if (it != boundaries_.end()) return it->second;
    return SparseIntMatrix(static_cast<int>(r_to), static_cast<int>(r_from));
}

int SwiatkowskiComplex::boundary_rank(int i, int n) const {
    if (i <= 0) return 0;
    if (rank(i, n) == 0 || rank(i - 1, n) == 0) return 0;
    auto key = std::make_pair(i, n);
    auto it = boundary_rank_.find(key);
    if (it != boundary_rank_.end()) return it->second;
    int r = rank_over_rationals(boundary(i, n));
    boundary_rank_.emplace(key, r);
    return r;
}

long long SwiatkowskiComplex::betti(int i, int n) const {
    if (i < 0 || n < 0) return 0;
    if (n > n_max_ || i > i_max_)
        throw ValidationError("OutOfBounds", "betti outside built bounds");
    return rank(i, n) - boundary_rank(i, n) - boundary_rank(i + 1, n);
}

HomologyGroup SwiatkowskiComplex::homology_z(int i, int n) const {
    if (i < 0 || n < 0) {
        HomologyGroup trivial;
        return trivial;
    }
    if (n > n_max_ || i > i_max_)
        throw ValidationError("OutOfBounds", "homology outside built bounds");
    return homology_from_boundaries(boundary(i, n), boundary(i + 1, n));
}

Int euler_characteristic(const Graph& g, int n, long long max_generators) {
    if (n < 0) throw ValidationError("OutOfBounds", "negative point count");
    int essential = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) >= 2) ++essential;
    int i_top = std::min(n, essential);
    auto cx = SwiatkowskiComplex::build(g, n, i_top, max_generators);
    Int chi = 0;
    for (int i = 0; i <= i_top; ++i) {
        Int b = cx.betti(i, n);
        chi += (i % 2 == 0) ? b : -b;
    }
    return chi;
}

const IntMatrix& ChainMap::matrix(int i, int n) const {
    auto it = mats.find({i, n});
    if (it == mats.end())
        throw ValidationError("OutOfBounds", "chain map has no matrix at this bidegree");
    return it->second;
}

namespace {

// difference (a - b) of half-edges sitting at one vertex of the map's output
struct RawFactor {
    int vertex;
    HalfEdge a, b;
};
using FactorAlts = std::vector<std::pair<int, RawFactor>>;

void check_matrix_size(long long rows, long long cols) {
    if (rows * cols > 16'000'000)
        throw GuardError("BoundsTooLarge", "chain map matrix too large");
}

// Expands a relabeled generator image (monomial plus, per original factor, a
// signed sum of raw differences) into the target basis and adds it to column
// `col`.  Raw differences re-express against the minimal half-edge:
// a - b = X(pos(a)) - X(pos(b)) with X(1) = 0.
void accumulate_image(const SwiatkowskiComplex& out_cx, int i, int n,
                      const std::vector<int>& mono,
                      const std::vector<FactorAlts>& exprs, int col, IntMatrix& m) {
    const Graph& g = out_cx.graph();
    std::vector<std::pair<int, std::vector<RawFactor>>> terms;
    terms.push_back({1, {}});
    for (const auto& alts : exprs) {
        std::vector<std::pair<int, std::vector<RawFactor>>> next;
        for (const auto& [sg, fl] : terms)
            for (const auto& [s2, raw] : alts) {
                auto fl2 = fl;
                fl2.push_back(raw);
                next.push_back({sg * s2, std::move(fl2)});
            }
        terms = std::move(next);
    }
    for (auto& [sign0, fl] : terms) {
        int sign = sign0;
        // Koszul: sort the degree-1 factors by vertex, sign per transposition
        for (size_t x = 1; x < fl.size(); ++x)
            for (size_t y = x; y > 0 && fl[y - 1].vertex > fl[y].vertex; --y) {
                std::swap(fl[y - 1], fl[y]);
                sign = -sign;
            }
        for (size_t x = 1; x < fl.size(); ++x)
            if (fl[x - 1].vertex == fl[x].vertex)
                throw InternalError("FactorCollision", "two factors at one vertex");

        std::vector<std::pair<int, std::vector<int>>> picks;
        picks.push_back({sign, {}});
        bool dead = false;
        for (const auto& raw : fl) {
            int pa = g.half_edge_position(raw.a);
            int pb = g.half_edge_position(raw.b);
            if (pa == pb) {
                dead = true;
                break;
            }
            std::vector<std::pair<int, int>> alts;
            if (pa >= 2) alts.push_back({1, pa});
            if (pb >= 2) alts.push_back({-1, pb});
            std::vector<std::pair<int, std::vector<int>>> next;
            for (const auto& [sg, ds] : picks)
                for (const auto& [s2, j] : alts) {
                    auto ds2 = ds;
                    ds2.push_back(j);
                    next.push_back({sg * s2, std::move(ds2)});
                }
            picks = std::move(next);
        }
        if (dead) continue;
        for (const auto& [sg, ds] : picks) {
            // a pick skips factors whose chosen position was 1; rebuild verts
            SwiatkowskiComplex::Generator tgt;
            tgt.mono = mono;
            tgt.verts.reserve(fl.size());
            tgt.diffs = ds;
            for (const auto& raw : fl) tgt.verts.push_back(raw.vertex);
            long long row = out_cx.generator_index(i, n, tgt);
            m.at(static_cast<int>(row), col) += sg;
        }
    }
}

HalfEdge embed_half_edge(const Embedding& emb, const Graph& src, const Graph& tgt,
                         HalfEdge h) {
    int e2 = emb.edge_map[h.edge];
    if (tgt.is_loop(e2)) return {e2, h.side};
    int v2 = emb.vertex_map[src.half_edge_vertex(h)];
    return {e2, tgt.edge(e2).u == v2 ? 0 : 1};
}

}  // namespace

ChainMap embedding_chain_map(const Embedding& emb, int n_max, int i_max,
                             long long max_generators) {
    ChainMap cm;
    cm.source = std::make_shared<SwiatkowskiComplex>(
        SwiatkowskiComplex::build(emb.source, n_max, i_max, max_generators));
    cm.target = std::make_shared<SwiatkowskiComplex>(
        SwiatkowskiComplex::build(emb.target, n_max, i_max, max_generators));
    const Graph& s = emb.source;
    const Graph& t = emb.target;
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i <= std::min(i_max + 1, n); ++i) {
            long long rs = cm.source->rank(i, n), rt = cm.target->rank(i, n);
            check_matrix_size(rt, rs);
            IntMatrix m(static_cast<int>(rt), static_cast<int>(rs));
            const auto& gens = cm.source->generators(i, n);
            for (size_t col = 0; col < gens.size(); ++col) {
                const auto& gen = gens[col];
                std::vector<int> mono(t.num_edges(), 0);
                for (int e = 0; e < s.num_edges(); ++e) mono[emb.edge_map[e]] = gen.mono[e];
                std::vector<FactorAlts> exprs;
                for (size_t f = 0; f < gen.verts.size(); ++f) {
                    auto he = s.half_edges_at(gen.verts[f]);
                    RawFactor raw{emb.vertex_map[gen.verts[f]],
                                  embed_half_edge(emb, s, t, he[gen.diffs[f] - 1]),
                                  embed_half_edge(emb, s, t, he[0])};
                    exprs.push_back({{1, raw}});
                }
                accumulate_image(*cm.target, i, n, mono, exprs, static_cast<int>(col), m);
            }
            cm.mats[{i, n}] = std::move(m);
        }
    }
    return cm;
}

namespace {

// pullback through a single-edge contraction q : before -> after
IntMatrix simple_contraction_matrix(const SwiatkowskiComplex& before_cx,
                                    const SwiatkowskiComplex& after_cx,
                                    const Contraction& q, int eidx, int i, int n) {
    const Graph& before = q.source;
    const Graph& after = q.target;
    int u = before.edge(eidx).u, w = before.edge(eidx).v;
    int z = q.vertex_map[u];
    std::vector<int> inv_e(after.num_edges(), -1);
    for (int e = 0; e < before.num_edges(); ++e)
        if (q.edge_map[e] >= 0) inv_e[q.edge_map[e]] = e;
    std::vector<int> inv_v(after.num_vertices(), -1);
    for (int v = 0; v < before.num_vertices(); ++v)
        if (v != u && v != w) inv_v[q.vertex_map[v]] = v;

    long long rb = before_cx.rank(i, n), ra = after_cx.rank(i, n);
    check_matrix_size(rb, ra);
    IntMatrix m(static_cast<int>(rb), static_cast<int>(ra));
    const auto& gens = after_cx.generators(i, n);
    for (size_t col = 0; col < gens.size(); ++col) {
        const auto& gen = gens[col];
        std::vector<int> mono(before.num_edges(), 0);
        for (int e = 0; e < after.num_edges(); ++e) mono[inv_e[e]] = gen.mono[e];
        std::vector<FactorAlts> exprs;
        for (size_t f = 0; f < gen.verts.size(); ++f) {
            int va = gen.verts[f];
            auto he = after.half_edges_at(va);
            HalfEdge ha = he[gen.diffs[f] - 1], hb = he[0];
            HalfEdge la{inv_e[ha.edge], ha.side}, lb{inv_e[hb.edge], hb.side};
            if (va != z) {
                exprs.push_back({{1, RawFactor{inv_v[va], la, lb}}});
                continue;
            }
            int vA = before.half_edge_vertex(la), vB = before.half_edge_vertex(lb);
            if (vA == vB) {
                exprs.push_back({{1, RawFactor{vA, la, lb}}});
            } else {
                HalfEdge mA{eidx, vA == u ? 0 : 1}, mB{eidx, vB == u ? 0 : 1};
                exprs.push_back(
                    {{1, RawFactor{vA, la, mA}}, {-1, RawFactor{vB, lb, mB}}});
            }
        }
        accumulate_image(before_cx, i, n, mono, exprs, static_cast<int>(col), m);
    }
    return m;
}

}  // namespace

ChainMap contraction_chain_map(const Contraction& phi, int n_max, int i_max,
                               long long max_generators, const std::vector<int>* order) {
    std::vector<int> seq = phi.contracted;
    if (order) {
        auto sorted = *order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != phi.contracted)
            throw ValidationError("InvalidContraction",
                                  "order is not a permutation of the contracted edges");
        seq = *order;
    }
    for (int e : seq)
        if (phi.source.is_loop(e))
            throw ValidationError("InvalidContraction", "cannot contract a loop");

    struct Step {
        Contraction q;
        int eidx;
    };
    std::vector<Step> steps;
    Graph current = phi.source;
    std::vector<int> cum(phi.source.num_vertices());
    std::iota(cum.begin(), cum.end(), 0);
    for (int e : seq) {
        const std::string& id = phi.source.edge(e).id;
        int eidx = current.edge_index(id);
        if (current.is_loop(eidx))
            throw ValidationError("InvalidContraction", "contracted edges contain a cycle");
        auto [next, q] = quotient_by_edges(current, {id});
        for (int f = 0; f < current.num_edges(); ++f)
            if (q.edge_map[f] >= 0 && !current.is_loop(f) && next.is_loop(q.edge_map[f]))
                throw ValidationError("InvalidContraction",
                                      "contracted edges contain a cycle");
        for (int& c : cum) c = q.vertex_map[c];
        steps.push_back({std::move(q), eidx});
        current = std::move(next);
    }

    // the leftover graph must match the contraction's stated target exactly
    const Graph& tgt = phi.target;
    if (current.num_vertices() != tgt.num_vertices() ||
        current.num_edges() != tgt.num_edges())
        throw ValidationError("InvalidContraction", "quotient does not match target");
    std::vector<int> rho_v(current.num_vertices(), -1);
    for (int v = 0; v < phi.source.num_vertices(); ++v) {
        int b = cum[v];
        if (rho_v[b] >= 0 && rho_v[b] != phi.vertex_map[v])
            throw ValidationError("InvalidContraction", "vertex map splits a fiber");
        rho_v[b] = phi.vertex_map[v];
    }
    std::vector<int> rho_e(current.num_edges(), -1);
    for (int f = 0; f < current.num_edges(); ++f) {
        int se = phi.source.edge_index(current.edge(f).id);
        if (phi.edge_map[se] < 0)
            throw ValidationError("InvalidContraction", "contracted edge survived");
        rho_e[f] = phi.edge_map[se];
    }
    std::vector<int> inv_rv(tgt.num_vertices(), -1), inv_re(tgt.num_edges(), -1);
    for (int b = 0; b < current.num_vertices(); ++b) {
        if (rho_v[b] < 0 || inv_rv[rho_v[b]] >= 0)
            throw ValidationError("InvalidContraction", "vertex map is not onto");
        inv_rv[rho_v[b]] = b;
    }
    for (int f = 0; f < current.num_edges(); ++f) {
        if (inv_re[rho_e[f]] >= 0)
            throw ValidationError("InvalidContraction", "edge map is not a bijection");
        inv_re[rho_e[f]] = f;
    }
    Embedding rho_inv = Embedding::make(tgt, current, inv_rv, inv_re);

    // complexes along the chain
    std::vector<std::shared_ptr<SwiatkowskiComplex>> cx;
    cx.push_back(std::make_shared<SwiatkowskiComplex>(
        SwiatkowskiComplex::build(phi.source, n_max, i_max, max_generators)));
    for (const auto& st : steps)
        cx.push_back(std::make_shared<SwiatkowskiComplex>(
            SwiatkowskiComplex::build(st.q.target, n_max, i_max, max_generators)));
    ChainMap tail = embedding_chain_map(rho_inv, n_max, i_max, max_generators);

    ChainMap cm;
    cm.source = tail.source;
    cm.target = cx.front();
    for (auto& [key, mat] : tail.mats) {
        IntMatrix m = mat;
        for (size_t t = steps.size(); t-- > 0;) {
            IntMatrix step = simple_contraction_matrix(*cx[t], *cx[t + 1], steps[t].q,
                                                       steps[t].eidx, key.first, key.second);
            m = step.mul(m);
        }
        cm.mats[key] = std::move(m);
    }
    return cm;
}

ChainMap cone_chain_map(const RootedContraction& phi, int n_max, int i_max,
                        long long max_generators) {
    auto cc = cone_of_contraction(phi);
    ChainMap push = embedding_chain_map(cc.iota, n_max, i_max, max_generators);
    ChainMap pull = contraction_chain_map(cc.pi, n_max, i_max, max_generators);
    return compose_chain_maps(push, pull);
}

ChainMap compose_chain_maps(const ChainMap& f, const ChainMap& g) {
    if (!(f.target->graph() == g.source->graph()))
        throw ValidationError("Incomposable", "chain maps do not share a middle complex");
    ChainMap cm;
    cm.source = f.source;
    cm.target = g.target;
    for (auto& [key, mf] : f.mats) {
        auto it = g.mats.find(key);
        if (it == g.mats.end()) continue;
        cm.mats[key] = it->second.mul(mf);
    }
    return cm;
}

namespace {

struct HomologyBasis {
    RatMatrix bh;  // cycle basis: boundary image columns then homology reps
    int b = 0, h = 0;
};

HomologyBasis homology_basis(const SwiatkowskiComplex& cx, int i, int n) {
    RatMatrix dout = RatMatrix::from_int(cx.boundary(i, n).dense());
    RatMatrix din = RatMatrix::from_int(cx.boundary(i + 1, n).dense());
    RatMatrix kernel = rat_kernel(dout);
    auto image_cols = rat_independent_columns(din);

    HomologyBasis hb;
    hb.b = static_cast<int>(image_cols.size());
    int dim = static_cast<int>(cx.rank(i, n));
    int z = kernel.cols;
    hb.bh = RatMatrix(dim, z);
    for (int j = 0; j < hb.b; ++j)
        for (int r = 0; r < dim; ++r) hb.bh.at(r, j) = din.at(r, image_cols[j]);
    int have = hb.b;
    auto with_column = [&](const RatMatrix& base, int used, const RatMatrix& col_src,
                           int col) {
        RatMatrix m(dim, used + 1);
        for (int r = 0; r < dim; ++r) {
            for (int j = 0; j < used; ++j) m.at(r, j) = base.at(r, j);
            m.at(r, used) = col_src.at(r, col);
        }
        return m;
    };
    RatMatrix cur(dim, hb.b);
    for (int r = 0; r < dim; ++r)
        for (int j = 0; j < hb.b; ++j) cur.at(r, j) = hb.bh.at(r, j);
    int rank_cur = rat_rank(cur);
    for (int j = 0; j < kernel.cols && have < z; ++j) {
        RatMatrix cand = with_column(cur, have, kernel, j);
        int rk = rat_rank(cand);
        if (rk > rank_cur) {
            for (int r = 0; r < dim; ++r) hb.bh.at(r, have) = kernel.at(r, j);
            cur = std::move(cand);
            rank_cur = rk;
            ++have;
        }
    }
    if (have != z) throw InternalError("BasisExtension", "cycle basis extension failed");
    hb.h = z - hb.b;
    return hb;
}

}  // namespace

RatMatrix induced_homology_map(const ChainMap& f, int i, int n) {
    auto bs = homology_basis(*f.source, i, n);
    auto bt = homology_basis(*f.target, i, n);
    RatMatrix m = RatMatrix::from_int(f.matrix(i, n));
    RatMatrix images(m.rows, bs.h);
    for (int j = 0; j < bs.h; ++j)
        for (int r = 0; r < m.rows; ++r) {
            Rat acc = 0;
            for (int k = 0; k < m.cols; ++k)
                if (m.at(r, k) != 0) acc += m.at(r, k) * bs.bh.at(k, bs.b + j);
            images.at(r, j) = acc;
        }
    RatMatrix coords;
    if (!rat_solve(bt.bh, images, coords))
        throw InternalError("NotACycleImage", "chain map image is not a cycle");
    RatMatrix out(bt.h, bs.h);
    for (int r = 0; r < bt.h; ++r)
        for (int j = 0; j < bs.h; ++j) out.at(r, j) = coords.at(bt.b + r, j);
    return out;
}

}  // namespace treecat
