#pragma once

// Graphs up to isomorphism: a canonical labeling by individualization and
// refinement over degree-refined ordered partitions, and exhaustive
// generation of all graphs with given order and size.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "domopt/error.hpp"
#include "domopt/graph.hpp"
#include "domopt/graph6.hpp"
#include "domopt/polynomial.hpp"

namespace domopt {

inline constexpr int canonical_order_bound = 10;

/// graph6 line of the canonically relabeled graph. Equal labels ⇔ isomorphic.
class CanonicalLabel {
public:
    CanonicalLabel() = default;
    explicit CanonicalLabel(std::string g6) : g6_(std::move(g6)) {}

    const std::string& graph6() const noexcept { return g6_; }
    Graph graph() const { return parse_graph6(g6_); }

    auto operator<=>(const CanonicalLabel&) const = default;

private:
    std::string g6_;
};

namespace detail {

using Cell = std::vector<Vertex>;
using Partition = std::vector<Cell>;

/// Splits cells by the count of neighbors in every cell until stable. Cells
/// are split into groups ordered by that signature, so the result depends on
/// the structure only, never on vertex names.
inline void refine(const Graph& g, Partition& part)
{
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint64_t> masks;
        masks.reserve(part.size());
        for (const auto& cell : part) {
            std::uint64_t m = 0;
            for (Vertex v : cell) m |= std::uint64_t{1} << v;
            masks.push_back(m);
        }
        Partition next;
        next.reserve(part.size());
        for (const auto& cell : part) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::vector<std::pair<std::vector<int>, Vertex>> keyed;
            keyed.reserve(cell.size());
            for (Vertex v : cell) {
                std::vector<int> sig(masks.size());
                for (std::size_t c = 0; c < masks.size(); ++c) sig[c] = std::popcount(g.rows()[v] & masks[c]);
                keyed.emplace_back(std::move(sig), v);
            }
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            Cell current{keyed[0].second};
            for (std::size_t i = 1; i < keyed.size(); ++i) {
                if (keyed[i].first != keyed[i - 1].first) {
                    next.push_back(std::move(current));
                    current.clear();
                    changed = true;
                }
                current.push_back(keyed[i].second);
            }
            next.push_back(std::move(current));
        }
        part = std::move(next);
    }
}

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {}

    std::vector<Vertex> run()
    {
        Partition root;
        // Degree first: cells ordered by increasing degree.
        std::map<int, Cell> by_degree;
        for (Vertex v = 0; v < n_; ++v) by_degree[g_.degree(v)].push_back(v);
        for (auto& [deg, cell] : by_degree) root.push_back(std::move(cell));
        refine(g_, root);
        search(root);
        return best_order_;
    }

private:
    // Upper-triangle bits of the relabeled graph in graph6 order, for the
    // first `k` positions of `order`.
    void prefix_bits(const std::vector<Vertex>& order, std::size_t k, std::string& out) const
    {
        out.clear();
        for (std::size_t j = 1; j < k; ++j)
            for (std::size_t i = 0; i < j; ++i) out.push_back(g_.adjacent(order[i], order[j]) ? '1' : '0');
    }

    void search(const Partition& part)
    {
        // Leading singleton cells fix a prefix of the final bit string.
        std::vector<Vertex> fixed;
        std::size_t first_open = 0;
        while (first_open < part.size() && part[first_open].size() == 1) fixed.push_back(part[first_open++][0]);
        std::string prefix;
        prefix_bits(fixed, fixed.size(), prefix);
        if (have_best_) {
            const int c = prefix.compare(0, prefix.size(), best_bits_, 0, prefix.size());
            if (c > 0) return;
        }
        if (first_open == part.size()) {
            if (!have_best_ || prefix < best_bits_) {
                best_bits_ = prefix;
                best_order_ = fixed;
                have_best_ = true;
            }
            return;
        }
        // Branch on the first non-singleton cell. Twins (equal open or closed
        // neighborhoods) are interchangeable by an automorphism fixing
        // everything already individualized, so one representative each.
        const Cell& cell = part[first_open];
        std::vector<Vertex> reps;
        for (Vertex v : cell) {
            bool twin = false;
            for (Vertex r : reps) {
                const std::uint64_t strip = (std::uint64_t{1} << v) | (std::uint64_t{1} << r);
                if ((g_.rows()[v] & ~strip) == (g_.rows()[r] & ~strip)) {
                    twin = true;
                    break;
                }
            }
            if (!twin) reps.push_back(v);
        }
        for (Vertex v : reps) {
            Partition child;
            child.reserve(part.size() + 1);
            for (std::size_t c = 0; c < part.size(); ++c) {
                if (c != first_open) {
                    child.push_back(part[c]);
                    continue;
                }
                child.push_back(Cell{v});
                Cell rest;
                for (Vertex u : part[c])
                    if (u != v) rest.push_back(u);
                child.push_back(std::move(rest));
            }
            refine(g_, child);
            search(child);
        }
    }

    const Graph& g_;
    int n_;
    bool have_best_ = false;
    std::string best_bits_;
    std::vector<Vertex> best_order_;
};

} // namespace detail

/// Canonical relabeling order: the returned sequence lists old vertices in
/// their new positions.
inline std::vector<Vertex> canonical_order(const Graph& g)
{
    if (g.order() > canonical_order_bound)
        throw CapExceeded("canonical labeling is bounded to n <= " + std::to_string(canonical_order_bound));
    if (g.order() == 0) return {};
    return detail::CanonicalSearch(g).run();
}

inline Graph canonical_graph(const Graph& g) { return g.permuted(canonical_order(g)); }

inline CanonicalLabel canonical_form(const Graph& g) { return CanonicalLabel(to_graph6(canonical_graph(g))); }

inline bool isomorphic(const Graph& a, const Graph& b)
{
    return a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

/// 𝒢(n,m) up to isomorphism, members in sorted label order.
struct ClassIndex {
    int n = 0;
    int m = 0;
    std::vector<CanonicalLabel> members;
};

inline int max_edges(int n) { return n * (n - 1) / 2; }

namespace detail {

inline void check_class_params(int n, int m)
{
    if (n < 0 || n > canonical_order_bound)
        throw CapExceeded("enumeration is bounded to n <= " + std::to_string(canonical_order_bound));
    if (m < 0 || m > max_edges(n))
        throw InvalidArgument("size " + std::to_string(m) + " out of range 0.." + std::to_string(max_edges(n)));
}

/// Grows 𝒢(n,m+1) from 𝒢(n,m) by adding every non-edge and deduplicating.
inline std::map<CanonicalLabel, Graph> grow(const std::map<CanonicalLabel, Graph>& level)
{
    std::map<CanonicalLabel, Graph> next;
    for (const auto& [label, g] : level) {
        for (int u = 0; u < g.order(); ++u)
            for (int v = u + 1; v < g.order(); ++v) {
                if (g.adjacent(u, v)) continue;
                Graph h = canonical_graph(g.with_edge(u, v));
                CanonicalLabel key(to_graph6(h));
                next.try_emplace(std::move(key), std::move(h));
            }
    }
    return next;
}

inline std::vector<Graph> to_members(std::map<CanonicalLabel, Graph>&& level)
{
    std::vector<Graph> out;
    out.reserve(level.size());
    for (auto& [label, g] : level) out.push_back(std::move(g));
    return out;
}

} // namespace detail

/// Every class of order n, indexed by size: result[m] lists one canonical
/// representative per isomorphism class, sorted by canonical label. Sizes
/// above half are obtained by complementing the mirrored level.
inline std::vector<std::vector<Graph>> enumerate_all(int n)
{
    detail::check_class_params(n, 0);
    const int top = max_edges(n);
    std::vector<std::vector<Graph>> out(static_cast<std::size_t>(top) + 1);
    std::map<CanonicalLabel, Graph> level;
    Graph empty(n);
    level.emplace(canonical_form(empty), empty);
    std::vector<std::map<CanonicalLabel, Graph>> lower;
    for (int m = 0; m <= top / 2; ++m) {
        lower.push_back(level);
        if (m < top / 2) level = detail::grow(level);
    }
    for (int m = 0; m <= top; ++m) {
        if (m <= top / 2) {
            out[m] = detail::to_members(std::map<CanonicalLabel, Graph>(lower[m]));
        } else {
            std::map<CanonicalLabel, Graph> mirrored;
            for (const auto& [label, g] : lower[top - m]) {
                Graph h = canonical_graph(g.complement());
                mirrored.try_emplace(CanonicalLabel(to_graph6(h)), std::move(h));
            }
            out[m] = detail::to_members(std::move(mirrored));
        }
    }
    return out;
}

/// One canonical representative per isomorphism class of order n and size m.
inline std::vector<Graph> enumerate_class(int n, int m)
{
    detail::check_class_params(n, m);
    const int top = max_edges(n);
    const int base = std::min(m, top - m);
    std::map<CanonicalLabel, Graph> level;
    Graph empty(n);
    level.emplace(canonical_form(empty), empty);
    for (int k = 0; k < base; ++k) level = detail::grow(level);
    if (base == m) return detail::to_members(std::move(level));
    std::map<CanonicalLabel, Graph> mirrored;
    for (const auto& [label, g] : level) {
        Graph h = canonical_graph(g.complement());
        mirrored.try_emplace(CanonicalLabel(to_graph6(h)), std::move(h));
    }
    return detail::to_members(std::move(mirrored));
}

inline std::size_t class_size(int n, int m) { return enumerate_class(n, m).size(); }

inline ClassIndex class_index(int n, int m)
{
    ClassIndex idx{n, m, {}};
    for (const auto& g : enumerate_class(n, m)) idx.members.emplace_back(to_graph6(g));
    return idx;
}

/// Independent count of all classes of order n, per size, by canonicalizing
/// every labeled graph. Exponential in n(n-1)/2; meant for n <= 6.
inline std::vector<std::size_t> class_sizes_by_sweep(int n)
{
    detail::check_class_params(n, 0);
    const int top = max_edges(n);
    if (top > 24) throw CapExceeded("edge-subset sweep is limited to n <= 7");
    std::vector<Edge> slots;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) slots.emplace_back(i, j);
    std::vector<std::map<CanonicalLabel, bool>> seen(static_cast<std::size_t>(top) + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << top); ++mask) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
        for (int b = 0; b < top; ++b)
            if ((mask >> b) & 1U) {
                auto [u, v] = slots[static_cast<std::size_t>(b)];
                rows[u] |= std::uint64_t{1} << v;
                rows[v] |= std::uint64_t{1} << u;
            }
        const Graph g = Graph::from_rows(n, std::move(rows));
        seen[static_cast<std::size_t>(std::popcount(mask))].emplace(canonical_form(g), true);
    }
    std::vector<std::size_t> out;
    for (const auto& s : seen) out.push_back(s.size());
    return out;
}

/// Reads graph6 lines (blank lines and '#' comments skipped), checks order
/// and size, re-canonicalizes and deduplicates. Output is sorted by label.
inline std::vector<Graph> ingest_graph6_class(std::istream& in, int n, int m)
{
    detail::check_class_params(n, m);
    std::map<CanonicalLabel, Graph> found;
    std::string line;
    std::size_t line_no = 0, offset = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t here = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        Graph g;
        try {
            g = parse_graph6(line);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.message(), here + e.offset());
        }
        if (g.order() != n || g.size() != m)
            throw ParseError("line " + std::to_string(line_no) + ": graph has order " + std::to_string(g.order()) +
                                 " and size " + std::to_string(g.size()) + ", expected " + std::to_string(n) + " and " +
                                 std::to_string(m),
                             here);
        Graph h = canonical_graph(g);
        found.try_emplace(CanonicalLabel(to_graph6(h)), std::move(h));
    }
    return detail::to_members(std::move(found));
}

} // namespace domopt
