#pragma once

// Optimal and least-optimal graphs in 𝒢(n,m): exhaustive classification,
// the closed-form predictions for every (n,m), and the explicit
// counterexample pairs behind the nonexistence results.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domopt/domination.hpp"
#include "domopt/enumeration.hpp"
#include "domopt/error.hpp"
#include "domopt/graph.hpp"
#include "domopt/graph6.hpp"
#include "domopt/parallel.hpp"
#include "domopt/polynomial.hpp"

namespace domopt {

inline int ceil_half(int n) { return (n + 1) / 2; }

// ---------------------------------------------------------------------------
// Tournament over a list of polynomials.

/// Two members and the exact verdict of compare(first, second).
struct WitnessPair {
    std::size_t first = 0, second = 0;
    ComparisonVerdict verdict;
};

struct TournamentResult {
    std::vector<std::size_t> winners;     ///< indices that are >= every other entry
    std::optional<WitnessPair> witness;   ///< set when `winners` is empty
};

/// Finds the entries that are pointwise >= every other entry on `domain`.
///
/// Entries that are not maximal in the small-x lexicographic order (and, when
/// `use_large_lex` is set, the large-x order) cannot win, so only the
/// survivors are compared exactly against everything else. When nobody wins,
/// the witness pairs the first small-x maximum with an entry that beats it
/// somewhere.
inline TournamentResult tournament(std::span<const IntPoly> polys, const Interval& domain, bool use_large_lex)
{
    TournamentResult out;
    if (polys.empty()) return out;
    std::size_t small_best = 0, large_best = 0;
    for (std::size_t i = 1; i < polys.size(); ++i) {
        if (lex_small_x_compare(polys[i], polys[small_best]) > 0) small_best = i;
        if (lex_large_x_compare(polys[i], polys[large_best]) > 0) large_best = i;
    }
    auto is_small_max = [&](std::size_t i) { return lex_small_x_compare(polys[i], polys[small_best]) == 0; };
    auto is_large_max = [&](std::size_t i) { return lex_large_x_compare(polys[i], polys[large_best]) == 0; };

    for (std::size_t c = 0; c < polys.size(); ++c) {
        if (!is_small_max(c) || (use_large_lex && !is_large_max(c))) continue;
        bool wins = true;
        for (std::size_t j = 0; j < polys.size() && wins; ++j) {
            if (j == c || polys[j] == polys[c]) continue;
            wins = compare_on(polys[c], polys[j], domain).first_at_least();
        }
        if (wins) out.winners.push_back(c);
    }
    if (!out.winners.empty()) return out;

    std::size_t a = 0;
    while (!is_small_max(a)) ++a;
    if (use_large_lex && !is_large_max(a)) {
        out.witness = WitnessPair{a, large_best, compare_on(polys[a], polys[large_best], domain)};
        return out;
    }
    for (std::size_t j = 0; j < polys.size(); ++j) {
        if (j == a) continue;
        auto v = compare_on(polys[a], polys[j], domain);
        if (!v.first_at_least()) {
            out.witness = WitnessPair{a, j, std::move(v)};
            return out;
        }
    }
    return out;
}

/// Mirror of tournament(): entries that are <= every other entry.
inline TournamentResult reverse_tournament(std::span<const IntPoly> polys, const Interval& domain, bool use_large_lex)
{
    std::vector<IntPoly> negated;
    negated.reserve(polys.size());
    for (const auto& p : polys) negated.push_back(-p);
    TournamentResult r = tournament(negated, domain, use_large_lex);
    if (r.witness) r.witness->verdict = compare_on(polys[r.witness->first], polys[r.witness->second], domain);
    return r;
}

// ---------------------------------------------------------------------------
// Class reports.

struct ClassMember {
    std::string graph6;  ///< canonical
    DomPoly poly;
};

struct ClassWitness {
    std::string first, second;  ///< graph6 of both members
    ComparisonVerdict verdict;  ///< compare(D(first), D(second)) on [0, inf)
};

struct ClassReport {
    int n = 0, m = 0;
    std::vector<ClassMember> members;

    bool optimal_exists = false;
    std::vector<std::string> optimal_members;
    bool unique = false;                    ///< exactly one optimal class member
    std::optional<ClassWitness> witness;    ///< set iff no optimal member

    bool least_optimal_exists = false;
    std::vector<std::string> least_optimal_members;
    bool least_unique = false;
    std::optional<ClassWitness> least_witness;

    /// Groups of two or more non-isomorphic members sharing a polynomial.
    std::vector<std::vector<std::string>> shared_polynomials;
};

struct ClassifyOptions {
    int jobs = 1;
    int order_bound = 8;
    CountOptions counting{};
};

namespace detail {

inline void check_classify_bound(int n, const ClassifyOptions& opt)
{
    if (n > opt.order_bound)
        throw CapExceeded("classification is bounded to n <= " + std::to_string(opt.order_bound));
}

} // namespace detail

/// Classifies a class from its members. `cached` may carry already known
/// polynomials keyed by canonical graph6; missing ones are counted.
inline ClassReport classify_members(int n, int m, const std::vector<Graph>& graphs, const ClassifyOptions& opt = {},
                                    const std::map<std::string, DomPoly>* cached = nullptr)
{
    ClassReport rep;
    rep.n = n;
    rep.m = m;
    rep.members.resize(graphs.size());
    CountOptions per_graph = opt.counting;
    per_graph.jobs = 1;
    parallel_for(graphs.size(), opt.jobs, [&](std::size_t i) {
        auto& member = rep.members[i];
        member.graph6 = to_graph6(graphs[i]);
        if (cached) {
            if (auto it = cached->find(member.graph6); it != cached->end()) {
                member.poly = it->second;
                return;
            }
        }
        member.poly = count_by_subsets(graphs[i], per_graph);
    });

    std::vector<IntPoly> polys;
    polys.reserve(rep.members.size());
    for (const auto& mb : rep.members) polys.push_back(mb.poly.poly());

    const auto best = tournament(polys, Interval::positive_reals(), true);
    rep.optimal_exists = !best.winners.empty();
    for (auto i : best.winners) rep.optimal_members.push_back(rep.members[i].graph6);
    rep.unique = best.winners.size() == 1;
    if (best.witness)
        rep.witness = ClassWitness{rep.members[best.witness->first].graph6, rep.members[best.witness->second].graph6,
                                   best.witness->verdict};

    const auto worst = reverse_tournament(polys, Interval::positive_reals(), true);
    rep.least_optimal_exists = !worst.winners.empty();
    for (auto i : worst.winners) rep.least_optimal_members.push_back(rep.members[i].graph6);
    rep.least_unique = worst.winners.size() == 1;
    if (worst.witness)
        rep.least_witness = ClassWitness{rep.members[worst.witness->first].graph6,
                                         rep.members[worst.witness->second].graph6, worst.witness->verdict};

    std::map<std::vector<mpz_class>, std::vector<std::string>, std::less<>> by_poly;
    for (const auto& mb : rep.members) by_poly[mb.poly.d].push_back(mb.graph6);
    for (auto& [d, group] : by_poly)
        if (group.size() > 1) rep.shared_polynomials.push_back(std::move(group));
    return rep;
}

inline ClassReport classify_class(int n, int m, const ClassifyOptions& opt = {})
{
    detail::check_classify_bound(n, opt);
    return classify_members(n, m, enumerate_class(n, m), opt);
}

// ---------------------------------------------------------------------------
// Predictions.

enum class Regime {
    sparse_strict,
    sparse_boundary_even,
    sparse_boundary_odd,
    mid_nonexistence,
    dense_nonexistence,
    near_complete_minus_one,
    complete,
    small_n_exception,
};

inline const char* to_string(Regime r)
{
    switch (r) {
    case Regime::sparse_strict: return "sparse-strict";
    case Regime::sparse_boundary_even: return "sparse-boundary-even";
    case Regime::sparse_boundary_odd: return "sparse-boundary-odd";
    case Regime::mid_nonexistence: return "mid-nonexistence";
    case Regime::dense_nonexistence: return "dense-nonexistence";
    case Regime::near_complete_minus_one: return "near-complete-minus-one";
    case Regime::complete: return "complete";
    case Regime::small_n_exception: return "small-n-exception";
    }
    return "?";
}

struct Prediction {
    int n = 0, m = 0;
    Regime regime = Regime::complete;
    std::optional<Graph> predicted;   ///< empty: no optimal graph
    std::string description;
};

/// The claimed unique optimal graph of 𝒢(n,m), or none. Overlapping regimes
/// at tiny n name the same graph; the order below picks one label.
inline Prediction predicted_optimal(int n, int m)
{
    if (n < 2) throw InvalidArgument("predictions need n >= 2");
    const int top = max_edges(n);
    if (m < 0 || m > top) throw InvalidArgument("size out of range");
    Prediction p{n, m, Regime::complete, std::nullopt, {}};
    const int half = ceil_half(n);
    if (m == top) {
        p.regime = Regime::complete;
        p.predicted = family::complete(n);
        p.description = "K_" + std::to_string(n);
    } else if (m == top - 1) {
        p.regime = Regime::near_complete_minus_one;
        p.predicted = family::complete(n).without_edge(0, 1);
        p.description = "K_" + std::to_string(n) + " - e";
    } else if (n == 5 && m == 6) {
        p.regime = Regime::small_n_exception;
        p.predicted = join(family::complete(1), family::matching_plus_isolates(2, 0));
        p.description = "K_1 v 2K_2";
    } else if (m < half) {
        p.regime = Regime::sparse_strict;
        p.predicted = family::matching_plus_isolates(m, n - 2 * m);
        p.description = std::to_string(m) + "K_2 u " + std::to_string(n - 2 * m) + "K_1";
    } else if (m == half && n % 2 == 0) {
        p.regime = Regime::sparse_boundary_even;
        p.predicted = family::matching_plus_isolates(m, 0);
        p.description = std::to_string(m) + "K_2";
    } else if (m == half) {
        p.regime = Regime::sparse_boundary_odd;
        p.predicted = family::matching_plus_cherry(m);
        p.description = std::to_string(m - 2) + "K_2 u K_{1,2}";
    } else if (m <= n - 1) {
        p.regime = Regime::mid_nonexistence;
        p.description = "none";
    } else {
        p.regime = Regime::dense_nonexistence;
        p.description = "none";
    }
    return p;
}

struct CharacterizationRow {
    int m = 0;
    Prediction prediction;
    ClassReport report;
    bool agree = false;
    std::string detail;
};

inline bool agrees(const Prediction& p, const ClassReport& r, std::string& detail)
{
    if (!p.predicted) {
        if (r.optimal_exists) {
            detail = "predicted none, found optimal";
            for (const auto& g : r.optimal_members) detail += " " + g;
            return false;
        }
        return true;
    }
    const std::string expected = canonical_form(*p.predicted).graph6();
    if (!r.optimal_exists) {
        detail = "predicted " + p.description + " (" + expected + "), found no optimal graph";
        return false;
    }
    if (!r.unique || r.optimal_members.front() != expected) {
        detail = "predicted unique " + p.description + " (" + expected + "), found";
        for (const auto& g : r.optimal_members) detail += " " + g;
        return false;
    }
    return true;
}

/// Classifies every size of order n and compares with predicted_optimal().
/// Persistent store of counted classes, consulted before counting.
class ClassCache {
public:
    virtual ~ClassCache() = default;
    virtual std::map<std::string, DomPoly> load(int n, int m) = 0;
    virtual void store(const ClassReport& report) = 0;
};

inline std::vector<CharacterizationRow> verify_characterization(int n, const ClassifyOptions& opt = {},
                                                                ClassCache* cache = nullptr)
{
    detail::check_classify_bound(n, opt);
    const auto levels = enumerate_all(n);
    std::vector<CharacterizationRow> rows;
    for (int m = 0; m <= max_edges(n); ++m) {
        CharacterizationRow row;
        row.m = m;
        row.prediction = predicted_optimal(n, m);
        const auto known = cache ? cache->load(n, m) : std::map<std::string, DomPoly>{};
        row.report = classify_members(n, m, levels[static_cast<std::size_t>(m)], opt, &known);
        if (cache) cache->store(row.report);
        row.agree = agrees(row.prediction, row.report, row.detail);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Explicit counterexamples.

/// K_n minus a small template (most universal vertices for its size, wins
/// near 0) against H_k = K_n minus a k-matching (wins for large x).
struct DenseWitness {
    int n = 0, k = 0;
    family::DenseTemplate shape{};
    Graph small_x_graph, large_x_graph;
    DomPoly small_x_poly, large_x_poly;
    bool small_matches_closed_form = false;
    bool large_matches_closed_form = false;
    bool small_x_wins_near_zero = false;  ///< lex_small(small, H_k) > 0
    bool large_x_wins_near_infinity = false;  ///< lex_large(H_k, small) > 0
    ComparisonVerdict verdict;            ///< compare(small, H_k)

    bool certifies_nonexistence() const
    {
        return small_matches_closed_form && large_matches_closed_form && small_x_wins_near_zero &&
               large_x_wins_near_infinity && verdict.relation == Relation::crossing;
    }
};

inline family::DenseTemplate dense_template_for(int k)
{
    using family::DenseTemplate;
    switch (k) {
    case 2: return DenseTemplate::p3;
    case 3: return DenseTemplate::k3;
    case 4: return DenseTemplate::c4;
    case 5: return DenseTemplate::k4_minus_e;
    case 6: return DenseTemplate::k4;
    default: throw InvalidArgument("dense construction needs 2 <= k <= 6");
    }
}

inline DenseWitness dense_counterexample(int n, int k, const CountOptions& opt = {})
{
    if (n < 6) throw InvalidArgument("dense construction needs n >= 6");
    const auto shape = dense_template_for(k);
    if (2 * k > n) throw InvalidArgument("H_k needs a k-matching, so 2k <= n");
    if (max_edges(n) - k < n - 1) throw InvalidArgument("dense construction needs m >= n-1");
    DenseWitness w;
    w.n = n;
    w.k = k;
    w.shape = shape;
    w.small_x_graph = family::complete_minus(n, shape);
    w.large_x_graph = family::complete_minus_matching(n, k);
    w.small_x_poly = count_by_subsets(w.small_x_graph, opt);
    w.large_x_poly = count_by_subsets(w.large_x_graph, opt);
    w.small_matches_closed_form = w.small_x_poly == dense_template_polynomial(n, shape);
    w.large_matches_closed_form = w.large_x_poly == complete_minus_matching_polynomial(n, k);
    const IntPoly a = w.small_x_poly.poly(), b = w.large_x_poly.poly();
    w.small_x_wins_near_zero = lex_small_x_compare(a, b) > 0;
    w.large_x_wins_near_infinity = lex_large_x_compare(b, a) > 0;
    w.verdict = compare_on_nonneg(a, b);
    return w;
}

/// G_k = K_n minus a k-matching (fewest universal vertices, lowest near 0)
/// against H = K_n minus the edges of P_{k+1}.
struct LeastOptimalWitness {
    int n = 0, k = 0;
    Graph matching_graph, path_graph;
    DomPoly matching_poly, path_poly;
    bool matching_matches_closed_form = false;
    bool path_matches_closed_form = false;
    ComparisonVerdict verdict;                 ///< compare(D(G_k), D(H))
    std::optional<mpq_class> crossing;         ///< the unique sign change, when rational
    std::optional<mpq_class> stated_crossing;  ///< (k-1)/(k-2), for k >= 3
    std::string note;

    bool matching_lowest_near_zero() const
    {
        return lex_small_x_compare(matching_poly.poly(), path_poly.poly()) < 0;
    }
    bool certifies_nonexistence() const
    {
        return verdict.relation == Relation::crossing && verdict.crossings.size() == 1 && matching_lowest_near_zero();
    }
    bool crossing_matches_stated() const { return crossing && stated_crossing && *crossing == *stated_crossing; }
};

inline LeastOptimalWitness least_optimal_counterexample(int n, int k, const CountOptions& opt = {})
{
    if (n < 7) throw InvalidArgument("least-optimal construction needs n >= 7");
    if (k < 2 || 2 * k > n) throw InvalidArgument("least-optimal construction needs 2 <= k <= n/2");
    LeastOptimalWitness w;
    w.n = n;
    w.k = k;
    w.matching_graph = family::complete_minus_matching(n, k);
    w.path_graph = family::complete_minus_path(n, k);
    w.matching_poly = count_by_subsets(w.matching_graph, opt);
    w.path_poly = count_by_subsets(w.path_graph, opt);
    w.matching_matches_closed_form = w.matching_poly == complete_minus_matching_polynomial(n, k);
    w.path_matches_closed_form = w.path_poly == complete_minus_path_polynomial(n, k);
    w.verdict = compare_on_nonneg(w.matching_poly.poly(), w.path_poly.poly());
    if (w.verdict.crossings.size() == 1) w.crossing = w.verdict.crossings.front().exact;
    if (k >= 3) {
        mpq_class s(k - 1, k - 2);
        s.canonicalize();
        w.stated_crossing = s;
    } else {
        w.note = "k = 2: the class has exactly two members (K_n minus P_3 and K_n minus 2K_2); "
                 "this is the dense pair";
    }
    return w;
}

/// G = K_r ∨ H with r the number of universal vertices.
struct Decomposition {
    int r = 0;
    Graph rest;
};

inline Decomposition structure_decomposition(const Graph& g)
{
    const VertexSet universal = g.universal_vertices();
    const VertexSet others{g.vertices().bits & ~universal.bits};
    return {universal.count(), g.induced(others)};
}

} // namespace domopt
