#include "treecat/cli.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "treecat/cone_flats.hpp"
#include "treecat/constructions.hpp"
#include "treecat/enumerate.hpp"
#include "treecat/errors.hpp"
#include "treecat/growth.hpp"
#include "treecat/json_io.hpp"
#include "treecat/matroid.hpp"
#include "treecat/swiatkowski.hpp"

namespace treecat {
namespace {

using nlohmann::ordered_json;

ordered_json json_int(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

ordered_json json_rat(const Rat& v) {
    if (denominator(v) == 1) return json_int(numerator(v));
    return v.str();
}

ordered_json json_poly(const IntPolynomial& p) {
    ordered_json arr = ordered_json::array();
    if (p.is_zero()) {
        arr.push_back(0);
        return arr;
    }
    for (int k = 0; k <= p.degree(); ++k) arr.push_back(json_int(p.coefficient(k)));
    return arr;
}

std::string csv_cell(const ordered_json& v, int depth = 0) {
    if (v.is_array()) {
        static const char* seps[] = {";", "|", "+"};
        const char* sep = seps[std::min(depth, 2)];
        std::string s;
        bool first = true;
        for (const auto& x : v) {
            if (!first) s += sep;
            s += csv_cell(x, depth + 1);
            first = false;
        }
        return s;
    }
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

// CSV rendering: scalar members become key,value lines; the first member that
// is an array of objects becomes a table underneath.
void emit(std::ostream& out, const ordered_json& j, const std::string& format) {
    if (format != "csv") {
        out << j.dump() << "\n";
        return;
    }
    const ordered_json* table = nullptr;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (table == nullptr && it->is_array() && !it->empty() && it->front().is_object()) {
            table = &*it;
            continue;
        }
        out << it.key() << "," << csv_cell(*it) << "\n";
    }
    if (table != nullptr) {
        const ordered_json& first = table->front();
        bool head = true;
        for (auto it = first.begin(); it != first.end(); ++it) {
            if (!head) out << ",";
            out << it.key();
            head = false;
        }
        out << "\n";
        for (const auto& row : *table) {
            bool cell = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (!cell) out << ",";
                out << csv_cell(*it);
                cell = false;
            }
            out << "\n";
        }
    }
}

Tree load_tree(const std::string& path) { return Tree::make(load_graph_file(path).g); }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

long long parse_ll(const std::string& s) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("BadWindow", "not an integer: " + s);
    }
}

void parse_window(const std::string& text, size_t axes, std::vector<long long>& lo,
                  std::vector<long long>& hi) {
    std::vector<std::string> parts = split_list(text);
    if (parts.empty()) throw ValidationError("BadWindow", "empty window");
    if (parts.size() == 1 && axes > 1) parts.assign(axes, parts[0]);
    if (parts.size() != axes)
        throw ValidationError("BadWindow", "window has " + std::to_string(parts.size()) +
                                               " ranges for " + std::to_string(axes) + " axes");
    lo.clear();
    hi.clear();
    for (const std::string& p : parts) {
        size_t pos = p.find("..");
        if (pos == std::string::npos)
            throw ValidationError("BadWindow", "expected lo..hi, got " + p);
        lo.push_back(parse_ll(p.substr(0, pos)));
        hi.push_back(parse_ll(p.substr(pos + 2)));
    }
}

std::vector<DirectedEdgeRef> parse_edge_refs(const std::string& csv) {
    std::vector<DirectedEdgeRef> out;
    for (std::string item : split_list(csv)) {
        DirectedEdgeRef r;
        if (!item.empty() && item[0] == '~') {
            r.reversed = true;
            item.erase(item.begin());
        }
        r.id = item;
        out.push_back(r);
    }
    return out;
}

InvariantKind parse_invariant(const std::string& name) {
    if (name == "betti") return InvariantKind::betti;
    if (name == "betti_cone") return InvariantKind::betti_cone;
    if (name == "ih_cone") return InvariantKind::ih_cone;
    if (name == "euler") return InvariantKind::euler;
    if (name == "euler_cone") return InvariantKind::euler_cone;
    if (name == "subtree_count") return InvariantKind::subtree_count;
    if (name == "hom_count") return InvariantKind::hom_count;
    throw ValidationError("UnknownInvariant", name);
}

ordered_json blocks_json(const Graph& g, const std::vector<int>& partition) {
    int nblocks = 0;
    for (int b : partition) nblocks = std::max(nblocks, b + 1);
    std::vector<std::vector<std::string>> blocks(nblocks);
    for (int v = 0; v < static_cast<int>(partition.size()); ++v)
        blocks[partition[v]].push_back(g.vertex_name(v));
    ordered_json arr = ordered_json::array();
    for (const auto& b : blocks) arr.push_back(b);
    return arr;
}

ordered_json growth_json(const std::string& invariant, const GrowthReport& rep,
                         const std::vector<std::string>& axis_names) {
    ordered_json j;
    j["invariant"] = invariant;
    j["mode"] = rep.mode;
    j["claimed_degree"] = rep.claimed_degree;
    j["stable"] = rep.fit.stable;
    j["total_degree"] = rep.fit.total_degree;
    j["variable_degrees"] = rep.fit.variable_degrees;
    j["pass"] = rep.pass;
    j["poly"] = rep.fit.poly.to_string(axis_names);
    ordered_json rows = ordered_json::array();
    const GridSamples& s = rep.samples;
    size_t total = s.total_points();
    int axes = s.axes();
    for (size_t flat = 0; flat < total; ++flat) {
        std::vector<long long> coord(axes);
        size_t rem = flat;
        for (int a = axes; a-- > 0;) {
            long long pts = s.axis_points(a);
            coord[a] = s.lo[a] + static_cast<long long>(rem % static_cast<size_t>(pts));
            rem /= static_cast<size_t>(pts);
        }
        ordered_json row;
        for (int a = 0; a < axes; ++a) row["m" + std::to_string(a + 1)] = coord[a];
        const Int& value = s.values[flat];
        std::vector<Int> point(coord.begin(), coord.end());
        Rat fitted = rep.fit.poly.eval(point);
        row["value"] = json_int(value);
        row["fitted"] = json_rat(fitted);
        row["residual"] = json_rat(Rat(value) - fitted);
        rows.push_back(row);
    }
    j["samples"] = rows;
    return j;
}

Tree path_tree(int edges) {
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (int t = 0; t <= edges; ++t) vs.push_back("v" + std::to_string(t));
    for (int t = 1; t <= edges; ++t)
        es.emplace_back("e" + std::to_string(t), "v" + std::to_string(t - 1),
                        "v" + std::to_string(t));
    return Tree::make(Graph::make(vs, es));
}

Tree star_tree(int arms) {
    std::vector<std::string> vs{"c"};
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (int t = 1; t <= arms; ++t) {
        vs.push_back("u" + std::to_string(t));
        es.emplace_back("a" + std::to_string(t), "c", "u" + std::to_string(t));
    }
    return Tree::make(Graph::make(vs, es));
}

int run_reproduce(std::ostream& out, const std::string& format) {
    struct Case {
        std::string name;
        InvariantSpec spec;
        std::string oracle;
        GrowthMode mode;
        std::vector<long long> lo, hi;
    };
    std::vector<Case> cases;

    auto subdivide_mode = [](std::vector<std::string> ids) {
        GrowthMode m;
        m.subdividing = true;
        for (const auto& id : ids) m.edges.push_back({id, false});
        return m;
    };
    auto sprout_mode = [](std::vector<std::string> verts) {
        GrowthMode m;
        m.subdividing = false;
        m.vertices = std::move(verts);
        return m;
    };

    {
        Case c;
        c.name = "fan_ih_i1";
        c.spec.kind = InvariantKind::ih_cone;
        c.spec.base = path_tree(1);
        c.spec.i = 1;
        c.oracle = "fan_ih";
        c.mode = subdivide_mode({"e1"});
        c.lo = {0};
        c.hi = {5};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "fan_ih_i2";
        c.spec.kind = InvariantKind::ih_cone;
        c.spec.base = path_tree(1);
        c.spec.i = 2;
        c.oracle = "fan_ih";
        c.mode = subdivide_mode({"e1"});
        c.lo = {0};
        c.hi = {6};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "thag_ih2";
        c.spec.kind = InvariantKind::ih_cone;
        c.spec.base = path_tree(0);
        c.spec.i = 1;
        c.oracle = "thag_ih2";
        c.mode = sprout_mode({"v0"});
        c.lo = {0};
        c.hi = {4};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "star_b1_n2";
        c.spec.kind = InvariantKind::betti;
        c.spec.base = path_tree(0);
        c.spec.i = 1;
        c.spec.n = 2;
        c.oracle = "star_b1";
        c.mode = sprout_mode({"v0"});
        c.lo = {1};
        c.hi = {5};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "star_b1_n4";
        c.spec.kind = InvariantKind::betti;
        c.spec.base = path_tree(0);
        c.spec.i = 1;
        c.spec.n = 4;
        c.oracle = "star_b1";
        c.mode = sprout_mode({"v0"});
        c.lo = {1};
        c.hi = {4};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "cone_star_b1_n3";
        c.spec.kind = InvariantKind::betti_cone;
        c.spec.base = path_tree(0);
        c.spec.i = 1;
        c.spec.n = 3;
        c.oracle = "cone_star_b1";
        c.mode = sprout_mode({"v0"});
        c.lo = {0};
        c.hi = {3};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "gal_chi_star_n3";
        c.spec.kind = InvariantKind::euler;
        c.spec.base = path_tree(0);
        c.spec.n = 3;
        c.oracle = "gal_chi_star";
        c.mode = sprout_mode({"v0"});
        c.lo = {0};
        c.hi = {4};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "gal_chi_cone_star_n3";
        c.spec.kind = InvariantKind::euler_cone;
        c.spec.base = path_tree(0);
        c.spec.n = 3;
        c.oracle = "gal_chi_cone_star";
        c.mode = sprout_mode({"v0"});
        c.lo = {0};
        c.hi = {3};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "b1_cone_tree_grid";
        c.spec.kind = InvariantKind::betti_cone;
        c.spec.base = path_tree(2);
        c.spec.i = 1;
        c.spec.n = 2;
        c.oracle = "b1_cone_tree";
        c.mode = subdivide_mode({"e1", "e2"});
        c.lo = {1, 1};
        c.hi = {2, 2};
        cases.push_back(c);
    }
    {
        Case c;
        c.name = "ih2_subdivided_star";
        c.spec.kind = InvariantKind::ih_cone;
        c.spec.base = star_tree(3);
        c.spec.i = 1;
        c.oracle = "ih2_subdivided_star";
        c.mode = subdivide_mode({"a1", "a2", "a3"});
        c.lo = {0, 0, 0};
        c.hi = {2, 2, 2};
        cases.push_back(c);
    }

    bool all = true;
    ordered_json rows = ordered_json::array();
    for (const Case& c : cases) {
        CrossCheckReport rep = cross_check(c.spec, c.oracle, c.mode, c.lo, c.hi);
        all = all && rep.pass;
        ordered_json row;
        row["name"] = c.name;
        row["invariant"] = rep.invariant;
        row["oracle"] = rep.oracle;
        row["points"] = static_cast<long long>(rep.points.size());
        row["pass"] = rep.pass;
        rows.push_back(row);
    }
    ordered_json j;
    j["rows"] = std::move(rows);
    j["pass"] = all;
    emit(out, j, format);
    return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"treecat: invariants of graph configuration spaces and cones over trees"};
    app.require_subcommand(1);

    std::string graph_path, tree_path, target_path, root, coeff, window, invariant;
    std::string mode = "subdivide", format = "json", edges_csv, vertices_csv;
    int n = 0, i = 0, claimed = 0, max_vertices = -1;
    long long max_generators = kDefaultMaxGenerators;

    auto with_format = [&](CLI::App* c) {
        c->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* c_hom = app.add_subcommand(
        "homology", "homology of the unordered configuration space of a graph");
    c_hom->add_option("--graph", graph_path, "graph file")->required();
    c_hom->add_option("--n", n, "number of points")->required();
    c_hom->add_option("--i", i, "homological degree")->required();
    c_hom->add_option("--coeff", coeff, "z = integral, q = rational")
        ->check(CLI::IsMember({"z", "q"}));
    c_hom->add_option("--max-generators", max_generators, "generator budget");
    with_format(c_hom);

    CLI::App* c_chi = app.add_subcommand(
        "chi", "characteristic polynomial, or with --n the Euler characteristic of UConf_n");
    c_chi->add_option("--graph", graph_path)->required();
    CLI::Option* chi_n = c_chi->add_option("--n", n, "number of points");
    c_chi->add_option("--max-vertices", max_vertices);
    c_chi->add_option("--max-generators", max_generators);
    with_format(c_chi);

    CLI::App* c_kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomial of a graphic matroid");
    c_kl->add_option("--graph", graph_path)->required();
    c_kl->add_option("--max-vertices", max_vertices);
    with_format(c_kl);

    CLI::App* c_ih = app.add_subcommand("ihdim", "intersection cohomology dimension IH_{2i}");
    c_ih->add_option("--graph", graph_path)->required();
    c_ih->add_option("--i", i)->required();
    c_ih->add_option("--max-vertices", max_vertices);
    with_format(c_ih);

    CLI::App* c_flats = app.add_subcommand("flats", "lattice of flats of a graphic matroid");
    c_flats->add_option("--graph", graph_path)->required();
    c_flats->add_option("--max-vertices", max_vertices);
    with_format(c_flats);

    CLI::App* c_triples = app.add_subcommand(
        "triples", "flat parametrization of the cone over a tree");
    c_triples->add_option("--tree", tree_path, "tree file")->required();
    c_triples->add_option("--max-vertices", max_vertices);
    with_format(c_triples);

    CLI::App* c_e1 = app.add_subcommand("e1", "dimension table of the E1 page");
    c_e1->add_option("--tree", tree_path)->required();
    c_e1->add_option("--i", i)->required();
    c_e1->add_option("--max-vertices", max_vertices);
    with_format(c_e1);

    CLI::App* c_growth = app.add_subcommand(
        "growth", "polynomial growth report for an invariant under subdivision or sprouting");
    c_growth->add_option("--tree", tree_path)->required();
    c_growth->add_option("--invariant", invariant, "betti, betti_cone, ih_cone, euler, "
                                                   "euler_cone, subtree_count, hom_count")
        ->required();
    c_growth->add_option("--mode", mode)->check(CLI::IsMember({"subdivide", "sprout"}));
    c_growth->add_option("--edges", edges_csv, "axes when subdividing; ~id reverses");
    c_growth->add_option("--vertices", vertices_csv, "axes when sprouting");
    c_growth->add_option("--window", window, "lo..hi per axis, comma separated")->required();
    c_growth->add_option("--claimed-degree", claimed)->required();
    c_growth->add_option("--n", n);
    c_growth->add_option("--i", i);
    c_growth->add_option("--coeff", coeff)->check(CLI::IsMember({"z", "q"}));
    c_growth->add_option("--root", root);
    c_growth->add_option("--target", target_path, "target tree for hom_count");
    c_growth->add_option("--max-vertices", max_vertices);
    c_growth->add_option("--max-generators", max_generators);
    with_format(c_growth);

    CLI::App* c_homcount = app.add_subcommand(
        "homcount", "number of contractions from one tree onto another");
    c_homcount->add_option("--tree", tree_path)->required();
    c_homcount->add_option("--target", target_path)->required();
    with_format(c_homcount);

    CLI::App* c_repro = app.add_subcommand(
        "reproduce", "cross-check computed invariants against their closed forms");
    with_format(c_repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs[0]->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    auto mv = [&](int fallback) { return max_vertices < 0 ? fallback : max_vertices; };

    try {
        if (c_hom->parsed()) {
            LoadedGraph lg = load_graph_file(graph_path);
            SwiatkowskiComplex cx = SwiatkowskiComplex::build(lg.g, n, i, max_generators);
            ordered_json j;
            if (coeff == "q") {
                j["betti"] = cx.betti(i, n);
            } else {
                HomologyGroup h = cx.homology_z(i, n);
                j["free_rank"] = h.free_rank;
                ordered_json tor = ordered_json::array();
                for (const Int& t : h.torsion) tor.push_back(json_int(t));
                j["torsion"] = tor;
            }
            emit(out, j, format);
            return 0;
        }
        if (c_chi->parsed()) {
            LoadedGraph lg = load_graph_file(graph_path);
            ordered_json j;
            if (chi_n->count() > 0)
                j["euler"] = json_int(euler_characteristic(lg.g, n, max_generators));
            else
                j["chi"] = json_poly(characteristic_polynomial(lg.g, mv(kDefaultMatroidVertexGuard)));
            emit(out, j, format);
            return 0;
        }
        if (c_kl->parsed()) {
            LoadedGraph lg = load_graph_file(graph_path);
            ordered_json j;
            j["kl"] = json_poly(kl_polynomial(lg.g, mv(kDefaultMatroidVertexGuard)));
            emit(out, j, format);
            return 0;
        }
        if (c_ih->parsed()) {
            LoadedGraph lg = load_graph_file(graph_path);
            ordered_json j;
            j["ih"] = json_int(ih_dimension(lg.g, i, mv(kDefaultMatroidVertexGuard)));
            emit(out, j, format);
            return 0;
        }
        if (c_flats->parsed()) {
            LoadedGraph lg = load_graph_file(graph_path);
            FlatLattice lattice = flats(lg.g, mv(kDefaultMatroidVertexGuard));
            ordered_json j;
            j["matroid_rank"] = lattice.matroid_rank;
            j["count"] = static_cast<long long>(lattice.flats.size());
            ordered_json arr = ordered_json::array();
            for (const Flat& f : lattice.flats) {
                ordered_json fj;
                fj["rank"] = f.rank;
                fj["corank"] = f.corank;
                fj["blocks"] = blocks_json(lg.g, f.partition);
                ordered_json es = ordered_json::array();
                for (int e : f.edges) es.push_back(lg.g.edge(e).id);
                fj["edges"] = es;
                arr.push_back(fj);
            }
            j["flats"] = arr;
            emit(out, j, format);
            return 0;
        }
        if (c_triples->parsed()) {
            Tree t = load_tree(tree_path);
            std::vector<ConeFlatTriple> triples =
                flat_triples(t, mv(kDefaultTripleVertexGuard));
            ordered_json j;
            j["count"] = static_cast<long long>(triples.size());
            ordered_json arr = ordered_json::array();
            for (const ConeFlatTriple& tr : triples) {
                ordered_json tj;
                tj["r_vertices"] = tr.r.g.num_vertices();
                ordered_json redges = ordered_json::array();
                for (const Graph::Edge& e : tr.r.g.edges())
                    redges.push_back({tr.r.g.vertex_name(e.u), tr.r.g.vertex_name(e.v)});
                tj["r_edges"] = redges;
                ordered_json wnames = ordered_json::array();
                for (int w : tr.w) wnames.push_back(tr.r.g.vertex_name(w));
                tj["w"] = wnames;
                tj["corank"] = static_cast<long long>(tr.w.size());
                std::vector<std::vector<std::string>> blocks(tr.r.g.num_vertices());
                for (int v = 0; v < static_cast<int>(tr.u.size()); ++v)
                    blocks[tr.u[v]].push_back(t.g.vertex_name(v));
                ordered_json bj = ordered_json::array();
                for (const auto& b : blocks) bj.push_back(b);
                tj["blocks"] = bj;
                arr.push_back(tj);
            }
            j["triples"] = arr;
            emit(out, j, format);
            return 0;
        }
        if (c_e1->parsed()) {
            Tree t = load_tree(tree_path);
            E1Table table = e1_dimensions(t, i, mv(kDefaultMatroidVertexGuard));
            ordered_json j;
            j["i"] = table.i;
            ordered_json rows = ordered_json::array();
            for (const auto& prow : table.dims) {
                ordered_json r = ordered_json::array();
                for (const Int& d : prow) r.push_back(json_int(d));
                rows.push_back(r);
            }
            j["dims"] = rows;
            emit(out, j, format);
            return 0;
        }
        if (c_growth->parsed()) {
            Tree base = load_tree(tree_path);
            InvariantSpec spec;
            spec.kind = parse_invariant(invariant);
            spec.base = base;
            spec.root = root;
            spec.i = i;
            spec.n = n;
            spec.coeff = coeff == "z" ? 'z' : 'q';
            spec.max_generators = max_generators;
            spec.max_vertices = mv(kDefaultMatroidVertexGuard);
            if (spec.kind == InvariantKind::hom_count) {
                if (target_path.empty())
                    throw ValidationError("BadFlag", "--target is required for hom_count");
                spec.hom_target = load_tree(target_path);
            }
            GrowthMode gm;
            gm.subdividing = mode == "subdivide";
            std::vector<std::string> axis_names;
            if (gm.subdividing) {
                gm.edges = parse_edge_refs(edges_csv);
                for (const DirectedEdgeRef& r : gm.edges)
                    axis_names.push_back((r.reversed ? "~" : "") + r.id);
            } else {
                gm.vertices = split_list(vertices_csv);
                axis_names = gm.vertices;
            }
            std::vector<long long> lo, hi;
            parse_window(window, axis_names.size(), lo, hi);
            GridSamples samples = invariant_grid(spec, gm, lo, hi);
            GrowthReport rep = growth_report(samples, claimed, gm.describe());
            emit(out, growth_json(invariant, rep, axis_names), format);
            return 0;
        }
        if (c_homcount->parsed()) {
            Tree t = load_tree(tree_path);
            Tree target = load_tree(target_path);
            ordered_json j;
            j["count"] = static_cast<long long>(hom_contractions(t, target).size());
            emit(out, j, format);
            return 0;
        }
        if (c_repro->parsed()) return run_reproduce(out, format);
    } catch (const GuardError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace treecat
