#ifndef LEAVITT_GRAPH_HPP
#define LEAVITT_GRAPH_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "leavitt/errors.hpp"

namespace leavitt {

struct EdgeDecl {
    std::string id;
    std::string src;
    std::string dst;
};

/// Finite directed graph. Vertex and edge orderings are fixed at
/// construction and anchor every canonical ordering downstream.
class Graph {
public:
    struct Edge {
        std::string id;
        int src;
        int dst;
    };

    Graph(const std::vector<std::string>& vertices, const std::vector<EdgeDecl>& edges) {
        for (const auto& v : vertices) {
            if (!vertex_index_.emplace(v, static_cast<int>(vertex_ids_.size())).second)
                throw precondition_error("duplicate vertex id '" + v + "'");
            vertex_ids_.push_back(v);
        }
        out_edges_.resize(vertex_ids_.size());
        for (const auto& e : edges) {
            if (!edge_index_.emplace(e.id, static_cast<int>(edges_.size())).second)
                throw precondition_error("duplicate edge id '" + e.id + "'");
            const int s = find_vertex(e.src);
            const int r = find_vertex(e.dst);
            if (s < 0 || r < 0)
                throw precondition_error("edge '" + e.id + "' references undeclared vertex");
            out_edges_[static_cast<size_t>(s)].push_back(static_cast<int>(edges_.size()));
            edges_.push_back(Edge{e.id, s, r});
        }
    }

    int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_id(int v) const { return vertex_ids_[static_cast<size_t>(v)]; }
    const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }

    int find_vertex(const std::string& id) const {
        auto it = vertex_index_.find(id);
        return it == vertex_index_.end() ? -1 : it->second;
    }
    int find_edge(const std::string& id) const {
        auto it = edge_index_.find(id);
        return it == edge_index_.end() ? -1 : it->second;
    }

    int vertex_index(const std::string& id) const {
        const int v = find_vertex(id);
        if (v < 0) throw precondition_error("unknown vertex '" + id + "'");
        return v;
    }
    int edge_index(const std::string& id) const {
        const int e = find_edge(id);
        if (e < 0) throw precondition_error("unknown edge '" + id + "'");
        return e;
    }

    /// Out-edges of v in declaration order.
    const std::vector<int>& out_edges(int v) const { return out_edges_[static_cast<size_t>(v)]; }
    int out_degree(int v) const { return static_cast<int>(out_edges(v).size()); }
    bool is_sink(int v) const { return out_edges(v).empty(); }

    /// The rewriting orientation of relation (5) eliminates d_v d_v* for
    /// the maximal out-edge d_v of each regular vertex. -1 for sinks.
    int designated_edge(int v) const {
        const auto& out = out_edges(v);
        return out.empty() ? -1 : out.back();
    }

    bool same_structure(const Graph& other) const {
        if (vertex_ids_ != other.vertex_ids_) return false;
        if (edges_.size() != other.edges_.size()) return false;
        for (size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i].id != other.edges_[i].id || edges_[i].src != other.edges_[i].src ||
                edges_[i].dst != other.edges_[i].dst)
                return false;
        return true;
    }

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
    std::map<std::string, int> vertex_index_;
    std::map<std::string, int> edge_index_;
};

/// Finite path: a composable edge sequence, or a bare vertex when empty.
struct Path {
    int base = -1; // source vertex
    std::vector<int> edges;

    static Path at_vertex(int v) { return Path{v, {}}; }

    int length() const { return static_cast<int>(edges.size()); }

    bool operator==(const Path& other) const { return base == other.base && edges == other.edges; }
    bool operator!=(const Path& other) const { return !(*this == other); }
};

/// Lexicographic on edge indices, then on the base vertex.
inline bool path_less(const Path& a, const Path& b) {
    if (a.edges != b.edges)
        return std::lexicographical_compare(a.edges.begin(), a.edges.end(), b.edges.begin(),
                                            b.edges.end());
    return a.base < b.base;
}

inline int path_source(const Path& p) { return p.base; }

inline int path_range(const Graph& g, const Path& p) {
    return p.edges.empty() ? p.base : g.edge(p.edges.back()).dst;
}

inline bool path_valid(const Graph& g, const Path& p) {
    if (p.base < 0 || p.base >= g.num_vertices()) return false;
    int at = p.base;
    for (int e : p.edges) {
        if (e < 0 || e >= g.num_edges() || g.edge(e).src != at) return false;
        at = g.edge(e).dst;
    }
    return true;
}

inline Path path_concat(const Graph& g, const Path& a, const Path& b) {
    if (path_range(g, a) != path_source(b))
        throw precondition_error("paths do not compose");
    Path r = a;
    r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
    return r;
}

inline Path path_from_edge(const Graph& g, int e) { return Path{g.edge(e).src, {e}}; }

/// Edge ids joined with "."; a length-0 path renders as its vertex id.
inline std::string render_path(const Graph& g, const Path& p) {
    if (p.edges.empty()) return g.vertex_id(p.base);
    std::string s;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i) s += ".";
        s += g.edge(p.edges[static_cast<size_t>(i)]).id;
    }
    return s;
}

inline bool is_cycle(const Graph& g, const Path& p) {
    return path_valid(g, p) && p.length() >= 1 && path_source(p) == path_range(g, p);
}

/// No vertex is visited twice (the base appears only as start = end).
inline bool is_vertex_simple_cycle(const Graph& g, const Path& p) {
    if (!is_cycle(g, p)) return false;
    std::vector<int> seen;
    for (int e : p.edges) {
        const int v = g.edge(e).src;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
        seen.push_back(v);
    }
    return true;
}

/// An exit of a cycle is an edge leaving some cycle vertex other than the
/// cycle's own edge there; equivalently, some cycle vertex has out-degree >= 2.
inline bool cycle_has_exit(const Graph& g, const Path& c) {
    if (!is_cycle(g, c))
        throw precondition_error("cycle_has_exit requires a cycle");
    for (int e : c.edges)
        if (g.out_degree(g.edge(e).src) >= 2) return true;
    return false;
}

struct CycleInfo {
    Path cycle;
    bool vertex_simple = false;
    bool has_exit = false;
};

/// Vertices emitting at least one edge (all graphs here are finite, so
/// regular = non-sink).
inline std::vector<int> regular_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!g.is_sink(v)) out.push_back(v);
    return out;
}

namespace detail {

inline void simple_cycle_dfs(const Graph& g, int root, int at, std::vector<bool>& on_path,
                             std::vector<int>& edges, std::vector<CycleInfo>& out) {
    for (int e : g.out_edges(at)) {
        const int w = g.edge(e).dst;
        if (w == root) {
            edges.push_back(e);
            Path c{root, edges};
            out.push_back(CycleInfo{c, true, cycle_has_exit(g, c)});
            edges.pop_back();
        } else if (w > root && !on_path[static_cast<size_t>(w)]) {
            on_path[static_cast<size_t>(w)] = true;
            edges.push_back(e);
            simple_cycle_dfs(g, root, w, on_path, edges, out);
            edges.pop_back();
            on_path[static_cast<size_t>(w)] = false;
        }
    }
}

} // namespace detail

/// All vertex-simple cycles, each reported once, based at its least vertex,
/// ordered by base vertex then lexicographically by edge indices.
inline std::vector<CycleInfo> vertex_simple_cycles(const Graph& g) {
    std::vector<CycleInfo> out;
    std::vector<bool> on_path(static_cast<size_t>(g.num_vertices()), false);
    std::vector<int> edges;
    for (int v = 0; v < g.num_vertices(); ++v)
        detail::simple_cycle_dfs(g, v, v, on_path, edges, out);
    return out;
}

inline std::vector<CycleInfo> cycles_without_exit(const Graph& g) {
    std::vector<CycleInfo> out;
    for (auto& c : vertex_simple_cycles(g))
        if (!c.has_exit) out.push_back(c);
    return out;
}

/// Condition (L): every cycle has an exit. It suffices to look at
/// vertex-simple cycles, since every cycle shares a vertex with one and an
/// exit anywhere along a cycle is an exit of the whole cycle.
inline bool condition_L(const Graph& g) {
    return cycles_without_exit(g).empty();
}

namespace detail {

/// Vertex-simple cycles through u, rebased at u, deterministically ordered.
inline std::vector<Path> simple_cycles_through(const Graph& g, int u) {
    std::vector<Path> out;
    for (const auto& info : vertex_simple_cycles(g)) {
        const auto& edges = info.cycle.edges;
        for (size_t i = 0; i < edges.size(); ++i) {
            if (g.edge(edges[i]).src != u) continue;
            Path rebased{u, {}};
            rebased.edges.insert(rebased.edges.end(), edges.begin() + static_cast<long>(i),
                                 edges.end());
            rebased.edges.insert(rebased.edges.end(), edges.begin(),
                                 edges.begin() + static_cast<long>(i));
            out.push_back(std::move(rebased));
            break;
        }
    }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

} // namespace detail

/// Constructs gamma = tau^m mu f with s(gamma) = u such that
/// gamma* beta_i gamma = 0 for every given cycle beta_i based at u:
/// tau is the minimal cycle at u, tau = mu nu splits at the first branching
/// vertex, f is the least out-edge there differing from nu's first edge,
/// and m makes tau^m longer than every beta_i.
inline Path killing_path(const Graph& g, int u, const std::vector<Path>& betas) {
    if (betas.empty())
        throw precondition_error("killing_path requires at least one cycle");
    for (const auto& b : betas) {
        if (!is_cycle(g, b) || path_source(b) != u)
            throw precondition_error("killing_path inputs must be cycles based at u");
    }
    for (size_t i = 0; i < betas.size(); ++i)
        for (size_t j = i + 1; j < betas.size(); ++j)
            if (betas[i] == betas[j])
                throw precondition_error("killing_path inputs must be distinct");

    const auto through = detail::simple_cycles_through(g, u);
    if (through.empty())
        throw precondition_error("no cycle is based at '" + g.vertex_id(u) + "'");
    for (const auto& c : through)
        if (!cycle_has_exit(g, c))
            throw precondition_error("cycles based at '" + g.vertex_id(u) + "' have no exit");

    // minimal length, then lexicographically least
    const Path* tau = &through.front();
    for (const auto& c : through)
        if (c.length() < tau->length()) tau = &c;

    int split = -1;
    for (size_t i = 0; i < tau->edges.size(); ++i)
        if (g.out_degree(g.edge(tau->edges[i]).src) >= 2) {
            split = static_cast<int>(i);
            break;
        }
    const int nu_first = tau->edges[static_cast<size_t>(split)];
    int exit_edge = -1;
    for (int e : g.out_edges(g.edge(nu_first).src))
        if (e != nu_first) {
            exit_edge = e;
            break;
        }

    int max_beta = 0;
    for (const auto& b : betas) max_beta = std::max(max_beta, b.length());
    int m = 1;
    while (m * tau->length() <= max_beta) ++m;

    Path gamma{u, {}};
    for (int k = 0; k < m; ++k)
        gamma.edges.insert(gamma.edges.end(), tau->edges.begin(), tau->edges.end());
    gamma.edges.insert(gamma.edges.end(), tau->edges.begin(),
                       tau->edges.begin() + split);
    gamma.edges.push_back(exit_edge);
    return gamma;
}

inline Path killing_path(const Graph& g, const std::string& u, const std::vector<Path>& betas) {
    return killing_path(g, g.vertex_index(u), betas);
}

// ---------------------------------------------------------------------------
// Built-in graphs
// ---------------------------------------------------------------------------

/// The two-loop graph: one vertex "1" with loops a and b. All copies of
/// L_{2,R} share this instance.
inline std::shared_ptr<const Graph> two_loop_graph() {
    static const auto g = std::make_shared<const Graph>(
        std::vector<std::string>{"1"},
        std::vector<EdgeDecl>{{"a", "1", "1"}, {"b", "1", "1"}});
    return g;
}

/// One vertex "u" with a single loop "z" (Laurent polynomial graph).
inline std::shared_ptr<const Graph> laurent_graph() {
    static const auto g = std::make_shared<const Graph>(
        std::vector<std::string>{"u"}, std::vector<EdgeDecl>{{"z", "u", "u"}});
    return g;
}

/// One vertex "u" with n loops e1..en.
inline std::shared_ptr<const Graph> rose_graph(int n) {
    if (n < 1) throw precondition_error("rose_graph requires n >= 1");
    std::vector<EdgeDecl> edges;
    for (int i = 1; i <= n; ++i) edges.push_back({"e" + std::to_string(i), "u", "u"});
    return std::make_shared<const Graph>(std::vector<std::string>{"u"}, edges);
}

/// Line graph u1 -> u2 -> ... -> un with edges e1..e(n-1).
inline std::shared_ptr<const Graph> line_graph(int n) {
    if (n < 1) throw precondition_error("line_graph requires n >= 1");
    std::vector<std::string> vertices;
    std::vector<EdgeDecl> edges;
    for (int i = 1; i <= n; ++i) vertices.push_back("u" + std::to_string(i));
    for (int i = 1; i < n; ++i)
        edges.push_back({"e" + std::to_string(i), "u" + std::to_string(i),
                         "u" + std::to_string(i + 1)});
    return std::make_shared<const Graph>(vertices, edges);
}

/// Loop e at u plus an edge f from u to the sink v.
inline std::shared_ptr<const Graph> toeplitz_graph() {
    static const auto g = std::make_shared<const Graph>(
        std::vector<std::string>{"u", "v"},
        std::vector<EdgeDecl>{{"e", "u", "u"}, {"f", "u", "v"}});
    return g;
}

/// Two loops e, f at u plus a two-cycle g: u -> v, h: v -> u.
inline std::shared_ptr<const Graph> bridged_two_loop_graph() {
    static const auto g = std::make_shared<const Graph>(
        std::vector<std::string>{"u", "v"},
        std::vector<EdgeDecl>{
            {"e", "u", "u"}, {"f", "u", "u"}, {"g", "u", "v"}, {"h", "v", "u"}});
    return g;
}

} // namespace leavitt

#endif
