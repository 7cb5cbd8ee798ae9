#pragma once

// Domination reliability: the probability that the operational vertices
// (each independently up with probability p) dominate the graph. Stored as an
// integer polynomial in p so that exact comparison on (0,1) reuses the
// Sturm machinery.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "domopt/domination.hpp"
#include "domopt/enumeration.hpp"
#include "domopt/error.hpp"
#include "domopt/optimality.hpp"
#include "domopt/polynomial.hpp"

namespace domopt {

struct ReliabilityPoly {
    int n = 0;
    IntPoly coeffs;  ///< monomial basis in p

    bool operator==(const ReliabilityPoly&) const = default;
};

/// Σ_i d(G,i) p^i (1-p)^{n-i}, expanded.
inline ReliabilityPoly reliability_polynomial(const DomPoly& d)
{
    const IntPoly one_minus_p{mpz_class(1), mpz_class(-1)};
    IntPoly sum;
    for (int i = 0; i <= d.n; ++i) {
        const auto& c = d.d[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        sum += c * (IntPoly::monomial(mpz_class(1), i) * pow(one_minus_p, static_cast<unsigned>(d.n - i)));
    }
    return {d.n, sum};
}

/// Inverse transform: D(x) = (1+x)^n Drel(x/(1+x)) = Σ_j c_j x^j (1+x)^{n-j}.
inline DomPoly domination_from_reliability(const ReliabilityPoly& r)
{
    IntPoly sum;
    for (int j = 0; j <= r.coeffs.degree(); ++j) {
        const auto c = r.coeffs[j];
        if (c == 0) continue;
        sum += c * (IntPoly::monomial(mpz_class(1), j) * one_plus_x_pow(r.n - j));
    }
    return DomPoly::from_poly(r.n, sum);
}

inline mpq_class eval_reliability(const ReliabilityPoly& r, const mpq_class& p)
{
    if (p < 0 || p > 1) throw InvalidArgument("probability " + p.get_str() + " outside [0,1]");
    return r.coeffs.eval(p);
}

/// (1-p)^n D(p/(1-p)), the substitution route. Singular at p = 1.
inline mpq_class reliability_by_substitution(const DomPoly& d, const mpq_class& p)
{
    if (p < 0 || p >= 1) throw InvalidArgument("substitution route needs 0 <= p < 1");
    const mpq_class one_minus = 1 - p;
    mpq_class scale = 1;
    for (int i = 0; i < d.n; ++i) scale *= one_minus;
    const mpq_class x = p / one_minus;
    return scale * d.poly().eval(x);
}

inline ComparisonVerdict compare_reliability(const ReliabilityPoly& a, const ReliabilityPoly& b)
{
    return compare_on(a.coeffs, b.coeffs, Interval::unit());
}

struct TransferRow {
    int m = 0;
    std::vector<std::string> domination_optimal;   ///< optimal on [0, inf) for D
    std::vector<std::string> reliability_optimal;  ///< optimal on [0, 1] for Drel
    bool transfer_holds = false;                   ///< the two sets coincide
    bool predicted_exists = false;                 ///< a unique optimal graph is claimed
    bool prediction_holds = false;                 ///< Drel outcome matches the claim
    std::optional<WitnessPair> reliability_witness;
};

/// For each size: the D-optimal members must be exactly the Drel-optimal
/// ones, decided independently by exact comparison on (0,1).
inline std::vector<TransferRow> verify_reliability_transfer(int n, const ClassifyOptions& opt = {})
{
    if (n < 2) throw InvalidArgument("reliability transfer needs n >= 2");
    if (n > 7) throw CapExceeded("reliability transfer is bounded to n <= 7");
    const auto levels = enumerate_all(n);
    std::vector<TransferRow> rows;
    for (int m = 0; m <= max_edges(n); ++m) {
        const auto& graphs = levels[static_cast<std::size_t>(m)];
        const ClassReport rep = classify_members(n, m, graphs, opt);
        std::vector<IntPoly> rel;
        rel.reserve(rep.members.size());
        for (const auto& mb : rep.members) rel.push_back(reliability_polynomial(mb.poly).coeffs);
        // Near p = 0 the low-order coefficients decide, so the small-x
        // lexicographic filter is still valid; the large-x one is not.
        const auto t = tournament(rel, Interval::unit(), false);

        TransferRow row;
        row.m = m;
        row.domination_optimal = rep.optimal_members;
        for (auto i : t.winners) row.reliability_optimal.push_back(rep.members[i].graph6);
        row.reliability_witness = t.witness;
        row.transfer_holds = row.domination_optimal == row.reliability_optimal;
        const auto pred = predicted_optimal(n, m);
        row.predicted_exists = pred.predicted.has_value();
        row.prediction_holds = row.predicted_exists
                                   ? (row.reliability_optimal.size() == 1 &&
                                      row.reliability_optimal.front() == canonical_form(*pred.predicted).graph6())
                                   : row.reliability_optimal.empty();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace domopt
