#pragma once

// Counting dominating sets by cardinality. Two engines that share no code
// path (subset search vs. inclusion–exclusion over neighborhood unions),
// the closed-form coefficient identities, and the composition rules for
// joins and disjoint unions.

#include <gmpxx.h>

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domopt/error.hpp"
#include "domopt/graph.hpp"
#include "domopt/parallel.hpp"
#include "domopt/polynomial.hpp"

namespace domopt {

/// Coefficients d(G,0..n) of the domination polynomial; d[i] counts the
/// dominating sets of cardinality i.
struct DomPoly {
    int n = 0;
    std::vector<mpz_class> d{mpz_class(1)};

    /// Least i with d[i] > 0; undefined for the null graph.
    std::optional<int> gamma() const
    {
        if (n == 0) return std::nullopt;
        for (int i = 0; i <= n; ++i)
            if (d[static_cast<std::size_t>(i)] > 0) return i;
        return std::nullopt;
    }

    IntPoly poly() const { return IntPoly(d); }

    mpz_class total() const
    {
        mpz_class t = 0;
        for (const auto& c : d) t += c;
        return t;
    }

    static DomPoly from_poly(int n, const IntPoly& p)
    {
        if (p.degree() > n) throw InvalidArgument("polynomial degree exceeds the order");
        DomPoly out;
        out.n = n;
        out.d.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
        for (int i = 0; i <= p.degree(); ++i) out.d[static_cast<std::size_t>(i)] = p[i];
        return out;
    }

    bool operator==(const DomPoly& o) const { return n == o.n && d == o.d; }
};

/// Checks the structural facts every domination polynomial satisfies.
/// Returns an empty string when all hold, otherwise the first violation.
inline std::string invariant_violation(const DomPoly& p)
{
    if (p.d.size() != static_cast<std::size_t>(p.n) + 1) return "coefficient vector has wrong length";
    if (p.d[static_cast<std::size_t>(p.n)] != 1) return "d(G,n) != 1";
    if (p.n >= 1 && p.d[0] != 0) return "d(G,0) != 0";
    for (int i = 0; i <= p.n; ++i)
        if (p.d[static_cast<std::size_t>(i)] < 0 || p.d[static_cast<std::size_t>(i)] > binomial(p.n, i))
            return "d(G," + std::to_string(i) + ") outside [0, C(n,i)]";
    if (const auto g = p.gamma())
        for (int i = *g; i <= p.n; ++i)
            if (p.d[static_cast<std::size_t>(i)] == 0) return "support has a gap at " + std::to_string(i);
    if (mpz_even_p(p.total().get_mpz_t())) return "total number of dominating sets is even";
    return {};
}

struct CountOptions {
    int order_cap = 24;
    int jobs = 1;
};

namespace detail {

inline const std::array<std::array<std::uint64_t, 63>, 63>& binomial_table()
{
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 63>, 63> t{};
        for (int n = 0; n < 63; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
        return t;
    }();
    return table;
}

inline void check_cap(const Graph& g, const CountOptions& opt)
{
    if (g.order() > opt.order_cap)
        throw CapExceeded("order " + std::to_string(g.order()) + " exceeds counting cap " +
                          std::to_string(opt.order_cap));
}

inline DomPoly from_tally(int n, std::span<const std::uint64_t> tally)
{
    DomPoly p;
    p.n = n;
    p.d.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
    for (int i = 0; i <= n; ++i) {
        mpz_class v;
        mpz_import(v.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &tally[static_cast<std::size_t>(i)]);
        p.d[static_cast<std::size_t>(i)] = v;
    }
    return p;
}

/// Depth-first inclusion/exclusion of vertices in index order, carrying the
/// dominated mask. Once the mask is full every extension dominates, so the
/// remaining choices are tallied by binomials; when even taking every
/// remaining vertex cannot complete the mask the branch is cut.
class SubsetCounter {
public:
    SubsetCounter(const Graph& g, std::vector<std::uint64_t>& tally)
        : n_(g.order()), full_(g.vertices().bits), rows_(g.closed_rows()), tally_(tally),
          suffix_(static_cast<std::size_t>(n_) + 1, 0)
    {
        for (int v = n_ - 1; v >= 0; --v) suffix_[v] = suffix_[v + 1] | rows_[v];
    }

    void run(int idx, std::uint64_t mask, int size)
    {
        const auto& binom = binomial_table();
        if (mask == full_) {
            const int rest = n_ - idx;
            for (int j = 0; j <= rest; ++j) tally_[static_cast<std::size_t>(size + j)] += binom[rest][j];
            return;
        }
        if (idx == n_ || (mask | suffix_[idx]) != full_) return;
        run(idx + 1, mask, size);
        run(idx + 1, mask | rows_[idx], size + 1);
    }

private:
    int n_;
    std::uint64_t full_;
    std::span<const std::uint64_t> rows_;
    std::vector<std::uint64_t>& tally_;
    std::vector<std::uint64_t> suffix_;
};

} // namespace detail

/// Reference engine: tallies every dominating subset by cardinality.
inline DomPoly count_by_subsets(const Graph& g, const CountOptions& opt = {})
{
    detail::check_cap(g, opt);
    const int n = g.order();
    if (n == 0) return DomPoly{};

    // Split the first `depth` include/exclude decisions into independent
    // tasks; tallies are summed afterwards, so the split never changes the result.
    const int depth = opt.jobs > 1 ? std::min(n, static_cast<int>(std::bit_width(static_cast<unsigned>(opt.jobs) * 4U))) : 0;
    const std::size_t tasks = std::size_t{1} << depth;
    std::vector<std::vector<std::uint64_t>> tallies(tasks, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    parallel_for(tasks, opt.jobs, [&](std::size_t t) {
        std::uint64_t mask = 0;
        int size = 0;
        for (int v = 0; v < depth; ++v)
            if ((t >> v) & 1U) {
                mask |= g.closed_rows()[v];
                ++size;
            }
        detail::SubsetCounter counter(g, tallies[t]);
        counter.run(depth, mask, size);
    });
    std::vector<std::uint64_t> total(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : tallies)
        for (int i = 0; i <= n; ++i) total[i] += t[i];
    return detail::from_tally(n, total);
}

/// Second engine: d(G,i) = sum over W ⊆ V of (-1)^|W| C(n - |N[W]|, i), with
/// W swept in Gray-code order and |N[W]| maintained through per-vertex cover
/// counts.
inline DomPoly count_by_inclusion_exclusion(const Graph& g, const CountOptions& opt = {})
{
    detail::check_cap(g, opt);
    const int n = g.order();
    if (n == 0) return DomPoly{};
    const auto rows = g.closed_rows();

    // hist[k] = (#even W) - (#odd W) with |N[W]| = k.
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> cover(static_cast<std::size_t>(n), 0);
    std::uint64_t w = 0;
    int covered = 0;
    bool odd = false;
    hist[0] = 1;
    const std::uint64_t steps = std::uint64_t{1} << n;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const int v = std::countr_zero(t);
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (w & bit) {
            for (std::uint64_t b = rows[v]; b != 0; b &= b - 1)
                if (--cover[std::countr_zero(b)] == 0) --covered;
        } else {
            for (std::uint64_t b = rows[v]; b != 0; b &= b - 1)
                if (cover[std::countr_zero(b)]++ == 0) ++covered;
        }
        w ^= bit;
        odd = !odd;
        hist[static_cast<std::size_t>(covered)] += odd ? -1 : 1;
    }

    DomPoly p;
    p.n = n;
    p.d.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
    for (int i = 0; i <= n; ++i) {
        mpz_class sum = 0;
        for (int k = 0; k <= n; ++k) {
            if (hist[k] == 0) continue;
            sum += mpz_class(static_cast<long>(hist[k])) * binomial(n - k, i);
        }
        p.d[static_cast<std::size_t>(i)] = sum;
    }
    return p;
}

inline DomPoly domination_polynomial(const Graph& g, const CountOptions& opt = {}) { return count_by_subsets(g, opt); }

// ---------------------------------------------------------------------------
// Closed-form coefficients.

/// d(G, n-j) = C(n, j), valid for every j <= δ(G): removing at most δ
/// vertices cannot strip any closed neighborhood completely.
inline mpz_class tail_coefficient(const Graph& g, int j)
{
    if (g.order() == 0) throw InvalidArgument("tail coefficient of the null graph");
    if (j < 0 || j > g.min_degree())
        throw InvalidArgument("tail coefficient needs 0 <= j <= min degree (" + std::to_string(g.min_degree()) + ")");
    return binomial(g.order(), j);
}

/// d(G, n-δ-1) = C(n, δ+1) - #distinct N[v] over minimum-degree v.
inline mpz_class delta_plus_one_coefficient(const Graph& g)
{
    if (g.order() == 0) throw InvalidArgument("coefficient of the null graph");
    return binomial(g.order(), g.min_degree() + 1) - min_degree_closed_neighborhood_count(g);
}

/// d(G, 1): the number of universal vertices.
inline mpz_class universal_vertex_coefficient(const Graph& g)
{
    if (g.order() == 0) throw InvalidArgument("coefficient of the null graph");
    return g.universal_vertices().count();
}

/// D(K_r ∨ H) = ((1+x)^r - 1)(1+x)^{n_H} + D(H), for r >= 1. The D(H) term
/// counts the nonempty dominating sets of H, so the null graph contributes
/// nothing. r = 0 returns D(H).
inline DomPoly join_polynomial(int r, const DomPoly& h)
{
    if (r < 0) throw InvalidArgument("join with a negative number of universal vertices");
    if (r == 0) return h;
    IntPoly p = (one_plus_x_pow(r) - IntPoly::constant(1)) * one_plus_x_pow(h.n);
    IntPoly hp = h.poly();
    if (h.n == 0) hp = {};
    return DomPoly::from_poly(r + h.n, p + hp);
}

/// A set dominates a disjoint union exactly when its trace on each part
/// dominates that part, so the polynomial is the product.
inline DomPoly disjoint_union_polynomial(std::span<const DomPoly> parts)
{
    IntPoly p = IntPoly::constant(1);
    int n = 0;
    for (const auto& part : parts) {
        p = p * part.poly();
        n += part.n;
    }
    return DomPoly::from_poly(n, p);
}

/// (1+x)^n - 1 - c1 x - c2 x^2 - c3 x^3.
inline DomPoly complete_minus_polynomial(int n, int c1, int c2, int c3)
{
    IntPoly p = one_plus_x_pow(n) - IntPoly{mpz_class(1), mpz_class(c1), mpz_class(c2), mpz_class(c3)};
    return DomPoly::from_poly(n, p);
}

/// K_n minus a k-matching: (1+x)^n - 1 - 2kx.
inline DomPoly complete_minus_matching_polynomial(int n, int k)
{
    if (k < 0 || 2 * k > n) throw InvalidArgument("k-matching needs 0 <= 2k <= n");
    return complete_minus_polynomial(n, 2 * k, 0, 0);
}

/// K_n minus the edges of P_{k+1}: the k+1 path vertices lose universality
/// and a pair fails exactly when it is the two neighbors of an interior
/// path vertex, giving (1+x)^n - 1 - (k+1)x - (k-1)x^2.
inline DomPoly complete_minus_path_polynomial(int n, int k)
{
    if (k < 1 || k + 1 > n) throw InvalidArgument("removing P_{k+1} needs 1 <= k <= n-1");
    return complete_minus_polynomial(n, k + 1, k - 1, 0);
}

/// K_n with one of the small templates removed. Only non-dominating sets of
/// size <= 3 exist, each lying inside the template's vertex set.
inline DomPoly dense_template_polynomial(int n, family::DenseTemplate t)
{
    using family::DenseTemplate;
    const int need = (t == DenseTemplate::p3 || t == DenseTemplate::k3) ? 3 : 4;
    if (n < need) throw InvalidArgument("order too small for the template");
    switch (t) {
    case DenseTemplate::p3: return complete_minus_polynomial(n, 3, 1, 0);
    case DenseTemplate::k3: return complete_minus_polynomial(n, 3, 3, 0);
    case DenseTemplate::c4: return complete_minus_polynomial(n, 4, 2, 0);
    case DenseTemplate::k3_pendant: return complete_minus_polynomial(n, 4, 5, 1);
    case DenseTemplate::k4_minus_e: return complete_minus_polynomial(n, 4, 6, 2);
    case DenseTemplate::k4: return complete_minus_polynomial(n, 4, 6, 4);
    }
    throw InvalidArgument("unknown template");
}

// ---------------------------------------------------------------------------
// Rewiring an edge onto an isolated vertex.

struct RewireCertificate {
    Graph before, after;
    DomPoly d_before, d_after;
    Edge edge;
    Vertex isolated = -1;
    bool coefficientwise_ge = false;   ///< d(H,i) >= d(G,i) for every i
    bool strict_expected = false;      ///< deg_G(v) >= 2
    bool strict_at_n_minus_2 = false;  ///< d(H,n-2) > d(G,n-2)

    bool holds() const { return coefficientwise_ge && (!strict_expected || strict_at_n_minus_2); }
};

inline RewireCertificate rewire_dominance_certificate(const Graph& g, Edge e, Vertex x, const CountOptions& opt = {})
{
    RewireCertificate c;
    c.before = g;
    c.after = rewire_isolated(g, e, x);
    c.edge = e;
    c.isolated = x;
    c.d_before = count_by_subsets(g, opt);
    c.d_after = count_by_subsets(c.after, opt);
    c.coefficientwise_ge = true;
    for (int i = 0; i <= g.order(); ++i)
        if (c.d_after.d[static_cast<std::size_t>(i)] < c.d_before.d[static_cast<std::size_t>(i)]) c.coefficientwise_ge = false;
    c.strict_expected = g.degree(e.second) >= 2;
    const auto k = static_cast<std::size_t>(g.order() - 2);
    c.strict_at_n_minus_2 = c.d_after.d[k] > c.d_before.d[k];
    return c;
}

} // namespace domopt
