#pragma once

// Labeled simple graphs on at most 62 vertices, stored as one 64-bit
// adjacency word per vertex, plus the standard families and graph
// operations used by the optimality analysis.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domopt/error.hpp"

namespace domopt {

using Vertex = int;

/// Bitmask over vertex indices. Only bits below the owning graph's order
/// are ever set.
struct VertexSet {
    std::uint64_t bits = 0;

    static constexpr VertexSet full(int n) noexcept
    {
        return VertexSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }
    static constexpr VertexSet single(Vertex v) noexcept { return VertexSet{std::uint64_t{1} << v}; }

    constexpr bool contains(Vertex v) const noexcept { return (bits >> v) & 1U; }
    constexpr int count() const noexcept { return std::popcount(bits); }
    constexpr bool empty() const noexcept { return bits == 0; }

    constexpr VertexSet operator|(VertexSet o) const noexcept { return {bits | o.bits}; }
    constexpr VertexSet operator&(VertexSet o) const noexcept { return {bits & o.bits}; }
    constexpr VertexSet& operator|=(VertexSet o) noexcept
    {
        bits |= o.bits;
        return *this;
    }
    constexpr bool operator==(const VertexSet&) const = default;

    /// Vertices in increasing order.
    std::vector<Vertex> members() const
    {
        std::vector<Vertex> out;
        for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }
};

using Edge = std::pair<Vertex, Vertex>;

class Graph {
public:
    static constexpr int max_order = 62;

    /// The null graph (no vertices).
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(check_order(n)), 0)
    {
        rebuild_closed();
    }

    /// Builds from adjacency rows; rejects asymmetric rows, loops and bits
    /// beyond the order.
    static Graph from_rows(int n, std::vector<std::uint64_t> rows)
    {
        check_order(n);
        if (rows.size() != static_cast<std::size_t>(n))
            throw InvalidArgument("row count does not match order");
        const std::uint64_t mask = VertexSet::full(n).bits;
        for (int v = 0; v < n; ++v) {
            if ((rows[v] & ~mask) != 0) throw InvalidArgument("adjacency bit beyond order");
            if ((rows[v] >> v) & 1U) throw InvalidArgument("loop at vertex " + std::to_string(v));
            for (std::uint64_t b = rows[v]; b != 0; b &= b - 1) {
                const int u = std::countr_zero(b);
                if (((rows[u] >> v) & 1U) == 0) throw InvalidArgument("adjacency is not symmetric");
            }
        }
        Graph g;
        g.n_ = n;
        g.adj_ = std::move(rows);
        g.rebuild_closed();
        return g;
    }

    /// Builds from unordered vertex pairs. Loops, out-of-range vertices and
    /// repeated pairs are rejected.
    static Graph from_edge_list(int n, std::span<const Edge> edges)
    {
        Graph g(n);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") has a vertex outside 0.." + std::to_string(n - 1));
            if (u == v) throw InvalidArgument("loop edge at vertex " + std::to_string(u));
            if (g.adjacent(u, v))
                throw InvalidArgument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
            g.adj_[u] |= std::uint64_t{1} << v;
            g.adj_[v] |= std::uint64_t{1} << u;
        }
        g.rebuild_closed();
        return g;
    }
    static Graph from_edge_list(int n, std::initializer_list<Edge> edges)
    {
        return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    int order() const noexcept { return n_; }
    int size() const noexcept
    {
        int twice = 0;
        for (auto row : adj_) twice += std::popcount(row);
        return twice / 2;
    }

    bool adjacent(Vertex u, Vertex v) const noexcept { return (adj_[u] >> v) & 1U; }
    int degree(Vertex v) const noexcept { return std::popcount(adj_[v]); }

    VertexSet neighbors(Vertex v) const
    {
        check_vertex(v);
        return VertexSet{adj_[v]};
    }

    /// N[v] = N(v) together with v.
    VertexSet closed_neighborhood(Vertex v) const
    {
        check_vertex(v);
        return VertexSet{closed_[v]};
    }

    /// Cached closed-neighborhood rows, one word per vertex.
    std::span<const std::uint64_t> closed_rows() const noexcept { return closed_; }
    std::span<const std::uint64_t> rows() const noexcept { return adj_; }

    VertexSet vertices() const noexcept { return VertexSet::full(n_); }

    int min_degree() const
    {
        if (n_ == 0) throw InvalidArgument("minimum degree of the null graph");
        int d = n_;
        for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }
    int max_degree() const
    {
        if (n_ == 0) throw InvalidArgument("maximum degree of the null graph");
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    std::vector<int> degree_sequence() const
    {
        std::vector<int> out(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) out[v] = degree(v);
        return out;
    }

    VertexSet isolated_vertices() const noexcept
    {
        VertexSet s;
        for (int v = 0; v < n_; ++v)
            if (adj_[v] == 0) s |= VertexSet::single(v);
        return s;
    }
    VertexSet universal_vertices() const noexcept
    {
        VertexSet s;
        for (int v = 0; v < n_; ++v)
            if (degree(v) == n_ - 1) s |= VertexSet::single(v);
        return s;
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (adjacent(u, v)) out.emplace_back(u, v);
        return out;
    }

    Graph with_edge(Vertex u, Vertex v) const
    {
        check_pair(u, v);
        if (adjacent(u, v)) throw InvalidArgument("edge already present");
        Graph g = *this;
        g.set(u, v, true);
        return g;
    }
    Graph without_edge(Vertex u, Vertex v) const
    {
        check_pair(u, v);
        if (!adjacent(u, v)) throw InvalidArgument("edge not present");
        Graph g = *this;
        g.set(u, v, false);
        return g;
    }

    Graph complement() const
    {
        Graph g = *this;
        const std::uint64_t mask = VertexSet::full(n_).bits;
        for (int v = 0; v < n_; ++v) g.adj_[v] = ~adj_[v] & mask & ~(std::uint64_t{1} << v);
        g.rebuild_closed();
        return g;
    }

    /// Relabels so that new vertex i is old vertex order[i].
    Graph permuted(std::span<const Vertex> order) const
    {
        if (order.size() != static_cast<std::size_t>(n_)) throw InvalidArgument("permutation length mismatch");
        std::vector<int> inverse(static_cast<std::size_t>(n_), -1);
        for (int i = 0; i < n_; ++i) {
            const Vertex v = order[i];
            if (v < 0 || v >= n_ || inverse[v] != -1) throw InvalidArgument("not a permutation");
            inverse[v] = i;
        }
        Graph g(n_);
        for (int i = 0; i < n_; ++i)
            for (std::uint64_t b = adj_[order[i]]; b != 0; b &= b - 1)
                g.adj_[i] |= std::uint64_t{1} << inverse[std::countr_zero(b)];
        g.rebuild_closed();
        return g;
    }

    /// Subgraph induced by `keep`, relabeled in increasing vertex order.
    Graph induced(VertexSet keep) const
    {
        const auto kept = keep.members();
        Graph g(static_cast<int>(kept.size()));
        for (std::size_t i = 0; i < kept.size(); ++i)
            for (std::size_t j = i + 1; j < kept.size(); ++j)
                if (adjacent(kept[i], kept[j])) g.set(static_cast<int>(i), static_cast<int>(j), true);
        return g;
    }

    bool operator==(const Graph& o) const noexcept { return n_ == o.n_ && adj_ == o.adj_; }

private:
    static int check_order(int n)
    {
        if (n < 0 || n > max_order)
            throw CapExceeded("graph order " + std::to_string(n) + " outside 0.." + std::to_string(max_order));
        return n;
    }
    void check_vertex(Vertex v) const
    {
        if (v < 0 || v >= n_) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    }
    void check_pair(Vertex u, Vertex v) const
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InvalidArgument("loop edge at vertex " + std::to_string(u));
    }
    void set(Vertex u, Vertex v, bool on)
    {
        const std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
        if (on) {
            adj_[u] |= bv;
            adj_[v] |= bu;
            closed_[u] |= bv;
            closed_[v] |= bu;
        } else {
            adj_[u] &= ~bv;
            adj_[v] &= ~bu;
            closed_[u] &= ~bv;
            closed_[v] &= ~bu;
        }
    }
    void rebuild_closed()
    {
        closed_.resize(adj_.size());
        for (int v = 0; v < n_; ++v) closed_[v] = adj_[v] | (std::uint64_t{1} << v);
    }

    int n_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint64_t> closed_;
};

/// Number of distinct sets N[v] over the vertices v of minimum degree.
inline int min_degree_closed_neighborhood_count(const Graph& g)
{
    const int delta = g.min_degree();
    std::vector<std::uint64_t> seen;
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) == delta) seen.push_back(g.closed_rows()[v]);
    std::sort(seen.begin(), seen.end());
    return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

inline Graph disjoint_union(const Graph& a, const Graph& b)
{
    const int n = a.order() + b.order();
    if (n > Graph::max_order) throw CapExceeded("union order " + std::to_string(n) + " exceeds 62");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < a.order(); ++v) rows[v] = a.rows()[v];
    for (int v = 0; v < b.order(); ++v) rows[a.order() + v] = b.rows()[v] << a.order();
    return Graph::from_rows(n, std::move(rows));
}

/// a ∨ b: disjoint union plus every edge between the two parts. The
/// vertices of `a` come first.
inline Graph join(const Graph& a, const Graph& b)
{
    const int n = a.order() + b.order();
    if (n > Graph::max_order) throw CapExceeded("join order " + std::to_string(n) + " exceeds 62");
    const std::uint64_t a_mask = VertexSet::full(a.order()).bits;
    const std::uint64_t b_mask = VertexSet::full(b.order()).bits << a.order();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < a.order(); ++v) rows[v] = a.rows()[v] | b_mask;
    for (int v = 0; v < b.order(); ++v) rows[a.order() + v] = (b.rows()[v] << a.order()) | a_mask;
    return Graph::from_rows(n, std::move(rows));
}

/// (G - uv) + ux, where uv is an edge and x is isolated. The vertex u keeps
/// an edge, v loses one.
inline Graph rewire_isolated(const Graph& g, Edge e, Vertex x)
{
    const auto [u, v] = e;
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || u == v || !g.adjacent(u, v))
        throw InvalidArgument("rewire: (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    if (x < 0 || x >= g.order() || g.degree(x) != 0)
        throw InvalidArgument("rewire: vertex " + std::to_string(x) + " is not isolated");
    return g.without_edge(u, v).with_edge(u, x);
}

// ---------------------------------------------------------------------------
// Families. Labeling is fixed so that graph6 output is reproducible.

namespace family {

inline Graph empty(int n) { return Graph(n); }

inline Graph complete(int n)
{
    Graph g(n);
    return g.complement();
}

/// P_n: edges i–(i+1).
inline Graph path(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edge_list(n, e);
}

/// C_n: path plus (n-1)–0.
inline Graph cycle(int n)
{
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edge_list(n, e);
}

/// K_{1,n-1} with center 0.
inline Graph star(int n)
{
    if (n < 1) throw InvalidArgument("star needs at least one vertex");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return Graph::from_edge_list(n, e);
}

/// mK_2 ∪ rK_1: pairs (2i, 2i+1) first, isolated vertices last.
inline Graph matching_plus_isolates(int m, int r)
{
    if (m < 0 || r < 0) throw InvalidArgument("negative family parameter");
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) e.emplace_back(2 * i, 2 * i + 1);
    return Graph::from_edge_list(2 * m + r, e);
}

/// (m-2)K_2 ∪ K_{1,2}: the matching first, then the path with its center
/// at vertex 2(m-2).
inline Graph matching_plus_cherry(int m)
{
    if (m < 2) throw InvalidArgument("(m-2)K2 ∪ K_{1,2} needs m >= 2");
    std::vector<Edge> e;
    for (int i = 0; i < m - 2; ++i) e.emplace_back(2 * i, 2 * i + 1);
    const int c = 2 * (m - 2);
    e.emplace_back(c, c + 1);
    e.emplace_back(c, c + 2);
    return Graph::from_edge_list(2 * m - 1, e);
}

/// (r-1)K_2 ∪ K_{1,n-2r+1}: matching first, then a star centered at 2(r-1).
inline Graph matching_plus_star(int n, int r)
{
    if (r < 1 || n - 2 * r + 1 < 1) throw InvalidArgument("(r-1)K2 ∪ K_{1,n-2r+1} needs 1 <= r <= n/2");
    std::vector<Edge> e;
    for (int i = 0; i < r - 1; ++i) e.emplace_back(2 * i, 2 * i + 1);
    const int c = 2 * (r - 1);
    for (int v = c + 1; v < n; ++v) e.emplace_back(c, v);
    return Graph::from_edge_list(n, e);
}

/// Small graphs whose edges are removed from K_n in the dense constructions.
/// Each lives on vertices 0..3 (0..2 for the three-vertex ones).
enum class DenseTemplate { p3, k3, c4, k3_pendant, k4_minus_e, k4 };

inline std::vector<Edge> template_edges(DenseTemplate t)
{
    switch (t) {
    case DenseTemplate::p3: return {{0, 1}, {1, 2}};
    case DenseTemplate::k3: return {{0, 1}, {1, 2}, {0, 2}};
    case DenseTemplate::c4: return {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    case DenseTemplate::k3_pendant: return {{0, 1}, {1, 2}, {0, 2}, {0, 3}};
    case DenseTemplate::k4_minus_e: return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    case DenseTemplate::k4: return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    }
    return {};
}

inline std::string_view template_name(DenseTemplate t)
{
    switch (t) {
    case DenseTemplate::p3: return "P3";
    case DenseTemplate::k3: return "K3";
    case DenseTemplate::c4: return "C4";
    case DenseTemplate::k3_pendant: return "K3+pendant";
    case DenseTemplate::k4_minus_e: return "K4-e";
    case DenseTemplate::k4: return "K4";
    }
    return "?";
}

inline Graph complete_minus_edges(int n, std::span<const Edge> removed)
{
    Graph g = complete(n);
    for (auto [u, v] : removed) g = g.without_edge(u, v);
    return g;
}

inline Graph complete_minus(int n, DenseTemplate t)
{
    const auto removed = template_edges(t);
    const int need = (t == DenseTemplate::p3 || t == DenseTemplate::k3) ? 3 : 4;
    if (n < need) throw InvalidArgument("K_n minus template needs n >= " + std::to_string(need));
    return complete_minus_edges(n, removed);
}

/// H_k: K_n with the matching (2i, 2i+1), i < k, removed.
inline Graph complete_minus_matching(int n, int k)
{
    if (k < 0 || 2 * k > n) throw InvalidArgument("k-matching needs 0 <= 2k <= n");
    std::vector<Edge> removed;
    for (int i = 0; i < k; ++i) removed.emplace_back(2 * i, 2 * i + 1);
    return complete_minus_edges(n, removed);
}

/// K_n with the edges of the path 0–1–…–k removed.
inline Graph complete_minus_path(int n, int k)
{
    if (k < 1 || k + 1 > n) throw InvalidArgument("removing P_{k+1} needs 1 <= k <= n-1");
    std::vector<Edge> removed;
    for (int i = 0; i < k; ++i) removed.emplace_back(i, i + 1);
    return complete_minus_edges(n, removed);
}


/// Constructs a family member by name, e.g. ("complete-minus-matching", {6, 2}).
/// Names: empty n, complete n, path n, cycle n, star n, matching m r,
/// matching-cherry m, matching-star n r, complete-minus-matching n k,
/// complete-minus-path n k, and complete-minus-{p3,k3,c4,k3-pendant,k4-e,k4} n.
inline Graph by_name(std::string_view name, std::span<const int> params)
{
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw InvalidArgument("family '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s)");
    };
    if (name == "empty") return need(1), empty(params[0]);
    if (name == "complete") return need(1), complete(params[0]);
    if (name == "path") return need(1), path(params[0]);
    if (name == "cycle") return need(1), cycle(params[0]);
    if (name == "star") return need(1), star(params[0]);
    if (name == "matching") return need(2), matching_plus_isolates(params[0], params[1]);
    if (name == "matching-cherry") return need(1), matching_plus_cherry(params[0]);
    if (name == "matching-star") return need(2), matching_plus_star(params[0], params[1]);
    if (name == "complete-minus-matching") return need(2), complete_minus_matching(params[0], params[1]);
    if (name == "complete-minus-path") return need(2), complete_minus_path(params[0], params[1]);
    static constexpr std::pair<std::string_view, DenseTemplate> templates[] = {
        {"complete-minus-p3", DenseTemplate::p3},
        {"complete-minus-k3", DenseTemplate::k3},
        {"complete-minus-c4", DenseTemplate::c4},
        {"complete-minus-k3-pendant", DenseTemplate::k3_pendant},
        {"complete-minus-k4-e", DenseTemplate::k4_minus_e},
        {"complete-minus-k4", DenseTemplate::k4},
    };
    for (auto [key, t] : templates)
        if (name == key) return need(1), complete_minus(params[0], t);
    throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

} // namespace family

// ---------------------------------------------------------------------------
// Plain-text edge lists: "n; u v; u v; ..." (newlines also separate items).

inline Graph parse_edge_list(std::string_view text)
{
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    };
    auto read_int = [&]() -> int {
        skip_space();
        const std::size_t start = pos;
        long value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            if (value > 1'000'000) throw ParseError("integer too large", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected a non-negative integer", start);
        return static_cast<int>(value);
    };
    auto at_separator = [&] {
        skip_space();
        return pos < text.size() && (text[pos] == ';' || text[pos] == '\n');
    };
    auto skip_separators = [&] {
        while (at_separator()) ++pos;
        skip_space();
    };

    skip_separators();
    const std::size_t order_at = pos;
    const int n = read_int();
    if (n > Graph::max_order) throw CapExceeded("graph order " + std::to_string(n) + " exceeds 62");
    std::vector<Edge> edges;
    std::vector<std::size_t> offsets;
    skip_space();
    if (pos < text.size() && !at_separator()) throw ParseError("expected ';' after the order", pos);
    skip_separators();
    while (pos < text.size()) {
        const std::size_t at = pos;
        const int u = read_int();
        const int v = read_int();
        skip_space();
        if (pos < text.size() && !at_separator()) throw ParseError("expected ';' between edges", pos);
        edges.emplace_back(u, v);
        offsets.push_back(at);
        skip_separators();
    }
    try {
        return Graph::from_edge_list(n, edges);
    } catch (const InvalidArgument& ex) {
        // Locate the offending pair for the diagnostic.
        Graph probe(n);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (u >= n || v >= n || u == v || probe.adjacent(u, v)) throw ParseError(ex.what(), offsets[i]);
            probe = probe.with_edge(u, v);
        }
        throw ParseError(ex.what(), order_at);
    }
}

inline std::string to_edge_list(const Graph& g)
{
    std::string out = std::to_string(g.order());
    for (auto [u, v] : g.edges()) out += "; " + std::to_string(u) + " " + std::to_string(v);
    return out;
}

} // namespace domopt
