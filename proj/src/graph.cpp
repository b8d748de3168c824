#include "treecat/graph.hpp"

#include <algorithm>

namespace treecat {

Graph Graph::make(std::vector<std::string> vertices,
                  std::vector<std::tuple<std::string, std::string, std::string>> edges) {
    Graph g;
    g.vnames_ = std::move(vertices);
    for (int i = 0; i < static_cast<int>(g.vnames_.size()); ++i) {
        if (g.vnames_[i].empty())
            throw ValidationError("EmptyName", "vertex names must be nonempty");
        if (!g.vidx_.emplace(g.vnames_[i], i).second)
            throw ValidationError("DuplicateVertex", "duplicate vertex name '" + g.vnames_[i] + "'");
    }
    for (auto& [id, a, b] : edges) {
        if (id.empty()) throw ValidationError("EmptyName", "edge ids must be nonempty");
        Edge e;
        e.id = id;
        e.u = g.vertex_index(a);
        e.v = g.vertex_index(b);
        int idx = static_cast<int>(g.edges_.size());
        if (!g.eidx_.emplace(id, idx).second)
            throw ValidationError("DuplicateEdge", "duplicate edge id '" + id + "'");
        g.edges_.push_back(std::move(e));
    }
    return g;
}

int Graph::vertex_index(const std::string& name) const {
    auto it = vidx_.find(name);
    if (it == vidx_.end())
        throw ValidationError("UnknownVertex", "no vertex named '" + name + "'");
    return it->second;
}

int Graph::edge_index(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end())
        throw ValidationError("UnknownEdge", "no edge with id '" + id + "'");
    return it->second;
}

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) {
        if (e.u == v) ++d;
        if (e.v == v) ++d;
    }
    return d;
}

int Graph::loop_count(int v) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.u == v && e.v == v) ++d;
    return d;
}

std::vector<HalfEdge> Graph::half_edges_at(int v) const {
    std::vector<HalfEdge> hs;
    for (int e = 0; e < num_edges(); ++e) {
        if (edges_[e].u == v) hs.push_back({e, 0});
        if (edges_[e].v == v) hs.push_back({e, 1});
    }
    return hs;  // construction order is already (edge, side) ascending
}

int Graph::half_edge_vertex(const HalfEdge& h) const {
    const Edge& e = edges_.at(h.edge);
    return h.side == 0 ? e.u : e.v;
}

int Graph::half_edge_position(const HalfEdge& h) const {
    auto hs = half_edges_at(half_edge_vertex(h));
    for (int i = 0; i < static_cast<int>(hs.size()); ++i)
        if (hs[i] == h) return i + 1;
    throw InternalError("BadHalfEdge", "half-edge not found at its vertex");
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& e : edges_) {
        if (e.u == v && e.v != v) out.push_back(e.v);
        if (e.v == v && e.u != v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> Graph::component_ids() const {
    std::vector<int> comp(num_vertices(), -1);
    int next = 0;
    for (int s = 0; s < num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbors(v)) {
                if (comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

int Graph::num_components() const {
    auto c = component_ids();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

bool Graph::is_connected() const { return num_components() <= 1; }

bool Graph::is_tree_shape() const {
    return num_vertices() >= 1 && num_edges() == num_vertices() - 1 && is_connected();
}

bool Graph::has_loops() const {
    for (int e = 0; e < num_edges(); ++e)
        if (is_loop(e)) return true;
    return false;
}

std::vector<int> Graph::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
        if (degree(v) == 1) out.push_back(v);
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.vnames_ != b.vnames_) return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    for (size_t i = 0; i < a.edges_.size(); ++i) {
        if (a.edges_[i].id != b.edges_[i].id || a.edges_[i].u != b.edges_[i].u ||
            a.edges_[i].v != b.edges_[i].v)
            return false;
    }
    return true;
}

Tree Tree::make(Graph graph) {
    if (!graph.is_tree_shape())
        throw ValidationError("NotATree", "graph is not connected with |E| = |V|-1");
    return Tree{std::move(graph)};
}

RootedTree RootedTree::make(Tree t, const std::string& root_name) {
    int root = t.g.vertex_index(root_name);
    return make(std::move(t), root);
}

RootedTree RootedTree::make(Tree t, int root_index) {
    RootedTree rt;
    rt.root = root_index;
    int n = t.g.num_vertices();
    if (root_index < 0 || root_index >= n)
        throw ValidationError("UnknownVertex", "root index out of range");
    rt.parent.assign(n, -1);
    rt.depth.assign(n, -1);
    rt.depth[root_index] = 0;
    std::vector<int> stack{root_index};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.g.neighbors(v)) {
            if (rt.depth[w] < 0) {
                rt.depth[w] = rt.depth[v] + 1;
                rt.parent[w] = v;
                stack.push_back(w);
            }
        }
    }
    rt.tree = std::move(t);
    return rt;
}

bool RootedTree::leq(int v, int w) const {
    while (v != -1) {
        if (v == w) return true;
        v = parent[v];
    }
    return false;
}

std::string fresh_name(const std::string& base,
                       const std::unordered_map<std::string, int>& used) {
    std::string name = base;
    while (used.count(name)) name += "'";
    return name;
}

}  // namespace treecat
