#include "treecat/growth.hpp"

#include <algorithm>

#include "treecat/enumerate.hpp"
#include "treecat/errors.hpp"

namespace treecat {

namespace {

std::string kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::betti: return "betti";
        case InvariantKind::betti_cone: return "betti_cone";
        case InvariantKind::ih_cone: return "ih_cone";
        case InvariantKind::euler: return "euler";
        case InvariantKind::euler_cone: return "euler_cone";
        case InvariantKind::subtree_count: return "subtree_count";
        case InvariantKind::hom_count: return "hom_count";
    }
    return "?";
}

Tree tree_at(const Tree& base, const GrowthMode& mode, const std::vector<int>& m) {
    if (mode.subdividing) return subdivide(base, mode.edges, m).tree;
    return sprout(base, mode.vertices, m).tree;
}

}  // namespace

std::string GrowthMode::describe() const {
    std::string s = subdividing ? "subdivide(" : "sprout(";
    bool first = true;
    if (subdividing)
        for (const auto& e : edges) {
            if (!first) s += ",";
            s += e.id;
            first = false;
        }
    else
        for (const auto& v : vertices) {
            if (!first) s += ",";
            s += v;
            first = false;
        }
    return s + ")";
}

Int evaluate_invariant(const InvariantSpec& spec, const Tree& t) {
    switch (spec.kind) {
        case InvariantKind::betti:
        case InvariantKind::betti_cone: {
            if (spec.coeff != 'z' && spec.coeff != 'q')
                throw ValidationError("BadMap", "coefficients must be 'z' or 'q'");
            Graph g = spec.kind == InvariantKind::betti ? t.g : cone(t).graph;
            auto cx = SwiatkowskiComplex::build(g, spec.n, spec.i, spec.max_generators);
            if (spec.coeff == 'q') return cx.betti(spec.i, spec.n);
            return cx.homology_z(spec.i, spec.n).free_rank;
        }
        case InvariantKind::ih_cone:
            return ih_dimension(cone(t).graph, spec.i, spec.max_vertices);
        case InvariantKind::euler:
            return euler_characteristic(t.g, spec.n, spec.max_generators);
        case InvariantKind::euler_cone:
            return euler_characteristic(cone(t).graph, spec.n, spec.max_generators);
        case InvariantKind::subtree_count:
            return subtree_count(t);
        case InvariantKind::hom_count:
            return Int(hom_contractions(t, spec.hom_target).size());
    }
    throw InternalError("BadKind", "unhandled invariant kind");
}

GridSamples invariant_grid(const InvariantSpec& spec, const GrowthMode& mode,
                           const std::vector<long long>& lo,
                           const std::vector<long long>& hi) {
    size_t axes = mode.subdividing ? mode.edges.size() : mode.vertices.size();
    if (lo.size() != axes || hi.size() != axes)
        throw ValidationError("BadWindow", "window arity does not match the mode axes");
    if (axes == 0) throw ValidationError("BadWindow", "empty window");
    GridSamples out;
    out.lo = lo;
    out.hi = hi;
    for (size_t a = 0; a < axes; ++a) {
        if (hi[a] < lo[a]) throw ValidationError("BadWindow", "inverted window axis");
        if (lo[a] < 0 || hi[a] > 1000)
            throw ValidationError("BadWindow", "grid coordinates must lie in 0..1000");
    }
    long long total = static_cast<long long>(out.total_points());
    out.values.resize(static_cast<size_t>(total));

    std::vector<int> m(axes);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (size_t a = axes; a-- > 0;) {
            long long pts = out.axis_points(static_cast<int>(a));
            m[a] = static_cast<int>(lo[a] + rem % pts);
            rem /= pts;
        }
        out.values[static_cast<size_t>(flat)] =
            evaluate_invariant(spec, tree_at(spec.base, mode, m));
    }
    out.validate();
    return out;
}

GrowthReport growth_report(const GridSamples& samples, int claimed_degree,
                           const std::string& mode_desc) {
    GrowthReport rep;
    rep.mode = mode_desc;
    rep.samples = samples;
    rep.claimed_degree = claimed_degree;
    rep.fit = fit_polynomial(samples, claimed_degree, 2);
    rep.pass = rep.fit.stable && rep.fit.total_degree <= claimed_degree;
    return rep;
}

namespace {

Int multinomial_fan(long long m, long long i) {
    // m! / (i! i! (m-2i)!) / (i+1), zero when m < 2i
    if (m < 2 * i) return 0;
    Int num = factorial(m);
    Int den = factorial(i) * factorial(i) * factorial(m - 2 * i) * (i + 1);
    if (num % den != 0)
        throw InternalError("BadDivision", "fan multinomial is not integral");
    return num / den;
}

void need_params(const std::string& name, const std::vector<Int>& p, size_t k) {
    if (p.size() != k)
        throw ValidationError("BadMap", "oracle '" + name + "' takes " +
                                            std::to_string(k) + " parameter(s)");
}

long long small(const Int& v) {
    if (v < -1000000 || v > 1000000)
        throw ValidationError("OutOfBounds", "oracle parameter out of range");
    return v.convert_to<long long>();
}

}  // namespace

Int closed_form_oracle(const std::string& name, const std::vector<Int>& params) {
    if (name == "fan_ih") {
        need_params(name, params, 2);
        if (params[0] < 0 || params[1] < 0) return 0;
        return multinomial_fan(small(params[0]), small(params[1]));
    }
    if (name == "thag_ih2") {
        need_params(name, params, 1);
        long long m = small(params[0]);
        if (m < 0) throw ValidationError("OutOfBounds", "thag_ih2 requires m >= 0");
        return ipow(2, static_cast<int>(m)) - m - 1;
    }
    if (name == "star_b1") {
        need_params(name, params, 2);
        long long m = small(params[0]), n = small(params[1]);
        if (m < 1) throw ValidationError("OutOfBounds", "star_b1 requires m >= 1");
        if (n < 0) throw ValidationError("OutOfBounds", "star_b1 requires n >= 0");
        return Int(1) - binomial(m - 1 + n, n) + (m - 1) * binomial(m - 2 + n, n - 1);
    }
    if (name == "cone_star_b1") {
        need_params(name, params, 1);
        if (params[0] < 0)
            throw ValidationError("OutOfBounds", "cone_star_b1 requires m >= 0");
        return binomial(small(params[0]) + 1, 2);
    }
    if (name == "gal_chi_star" || name == "gal_chi_cone_star") {
        need_params(name, params, 2);
        long long m = small(params[0]);
        long long n = small(params[1]);
        if (m < 0 || n < 0)
            throw ValidationError("OutOfBounds", name + " requires m, n >= 0");
        bool is_cone = name == "gal_chi_cone_star";
        IntPolynomial num;
        if (is_cone) {
            // (1 - m t)^2
            num = IntPolynomial(Int(1)) + IntPolynomial::monomial(-2 * Int(m), 1) +
                  IntPolynomial::monomial(Int(m) * Int(m), 2);
        } else {
            num = IntPolynomial(Int(1)) + IntPolynomial::monomial(-(Int(m) - 1), 1);
        }
        int dpow = static_cast<int>(is_cone ? m + 1 : m);
        IntPolynomial den;
        for (int k = 0; k <= dpow; ++k)
            den = den + IntPolynomial::monomial((k % 2 == 0 ? 1 : -1) * binomial(dpow, k), k);
        return series_coefficient(num, den, static_cast<int>(n));
    }
    if (name == "ih2_subdivided_star") {
        need_params(name, params, 3);
        for (const Int& p : params)
            if (p < 0)
                throw ValidationError("OutOfBounds",
                                      "ih2_subdivided_star requires m1,m2,m3 >= 0");
        long long m1 = small(params[0]), m2 = small(params[1]), m3 = small(params[2]);
        return Int(m1 + 1) * (m2 + 1) * (m3 + 1) + binomial(m1 + 1, 2) +
               binomial(m2 + 1, 2) + binomial(m3 + 1, 2) - 2 * (m1 + m2 + m3) - 1;
    }
    throw ValidationError("UnknownOracle", "no closed form named '" + name + "'");
}

Int b1_cone_tree(const Tree& t) {
    Int total = t.g.num_edges();
    for (int v = 0; v < t.g.num_vertices(); ++v)
        total += binomial(t.g.degree(v), 2);
    return total;
}

CrossCheckReport cross_check(const InvariantSpec& spec, const std::string& oracle,
                             const GrowthMode& mode, const std::vector<long long>& lo,
                             const std::vector<long long>& hi) {
    CrossCheckReport rep;
    rep.invariant = kind_name(spec.kind);
    rep.oracle = oracle;
    GridSamples grid = invariant_grid(spec, mode, lo, hi);

    size_t axes = lo.size();
    long long total = static_cast<long long>(grid.total_points());
    rep.pass = true;
    std::vector<int> m(axes);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        CrossCheckPoint pt;
        pt.coords.resize(axes);
        for (size_t a = axes; a-- > 0;) {
            long long pts = grid.axis_points(static_cast<int>(a));
            pt.coords[a] = lo[a] + rem % pts;
            m[a] = static_cast<int>(pt.coords[a]);
            rem /= pts;
        }
        pt.computed = grid.values[static_cast<size_t>(flat)];
        if (oracle == "b1_cone_tree") {
            pt.expected = b1_cone_tree(tree_at(spec.base, mode, m));
        } else {
            std::vector<Int> params;
            for (long long c : pt.coords) params.emplace_back(c);
            if (oracle == "fan_ih")
                params.emplace_back(spec.i);
            else if (oracle == "star_b1" || oracle == "gal_chi_star" ||
                     oracle == "gal_chi_cone_star")
                params.emplace_back(spec.n);
            pt.expected = closed_form_oracle(oracle, params);
        }
        pt.match = pt.computed == pt.expected;
        if (!pt.match) rep.pass = false;
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

}  // namespace treecat
