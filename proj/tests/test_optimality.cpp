#include <gtest/gtest.h>

#include "domopt/optimality.hpp"
#include "oracles.hpp"

using namespace domopt;

namespace {

std::vector<long long> coeffs(const DomPoly& p)
{
    std::vector<long long> out;
    for (const auto& c : p.d) out.push_back(c.get_si());
    return out;
}

const DomPoly& poly_of(const ClassReport& r, const std::string& g6)
{
    for (const auto& mb : r.members)
        if (mb.graph6 == g6) return mb.poly;
    throw std::runtime_error("missing " + g6);
}

// Floating-point cross-check of an exact report: an optimal member is never
// below any other on a grid, and a nonexistence witness changes sign on it.
void grid_check(const ClassReport& r)
{
    std::vector<double> xs;
    for (int i = 1; i <= 400; ++i) xs.push_back(i * 0.05);
    for (const auto& g6 : r.optimal_members) {
        const auto best = coeffs(poly_of(r, g6));
        for (const auto& mb : r.members)
            for (double x : xs) {
                const double a = oracle::eval(best, x), b = oracle::eval(coeffs(mb.poly), x);
                EXPECT_GE(a - b, -1e-6 * std::max(1.0, std::abs(a))) << r.n << "," << r.m << " " << g6 << " vs "
                                                                    << mb.graph6 << " at " << x;
            }
    }
    if (!r.optimal_exists && r.witness) {
        const auto a = coeffs(poly_of(r, r.witness->first)), b = coeffs(poly_of(r, r.witness->second));
        bool pos = false, neg = false;
        for (const auto& s : r.witness->verdict.samples) {
            const double d = oracle::eval(a, s.x.get_d()) - oracle::eval(b, s.x.get_d());
            pos = pos || d > 0;
            neg = neg || d < 0;
        }
        EXPECT_TRUE(pos && neg) << r.n << "," << r.m;
    }
}

} // namespace

TEST(Optimality, TournamentBasics)
{
    const std::vector<IntPoly> polys = {IntPoly{mpz_class(0), mpz_class(1)}, IntPoly{mpz_class(0), mpz_class(2)},
                                        IntPoly{mpz_class(0), mpz_class(2)}};
    const auto t = tournament(polys, Interval::positive_reals(), true);
    EXPECT_EQ(t.winners, (std::vector<std::size_t>{1, 2}));
    const auto crossing = std::vector<IntPoly>{IntPoly{mpz_class(0), mpz_class(2)},
                                               IntPoly{mpz_class(0), mpz_class(1), mpz_class(1)}};
    const auto c = tournament(crossing, Interval::positive_reals(), true);
    EXPECT_TRUE(c.winners.empty());
    ASSERT_TRUE(c.witness.has_value());
    EXPECT_EQ(c.witness->verdict.relation, Relation::crossing);
}

TEST(Optimality, SixFiveHasNoOptimalGraph)
{
    const auto r = classify_class(6, 5);
    EXPECT_FALSE(r.optimal_exists);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->verdict.relation, Relation::crossing);
    grid_check(r);
}

TEST(Optimality, SixThreeIsThreeMatching)
{
    const auto r = classify_class(6, 3);
    ASSERT_TRUE(r.unique);
    EXPECT_TRUE(isomorphic(parse_graph6(r.optimal_members.front()), family::matching_plus_isolates(3, 0)));
}

TEST(Optimality, FiveSixException)
{
    const auto r = classify_class(5, 6);
    ASSERT_TRUE(r.unique);
    EXPECT_TRUE(isomorphic(parse_graph6(r.optimal_members.front()),
                           join(family::complete(1), family::matching_plus_isolates(2, 0))));
}

TEST(Optimality, ReportsSurviveGridCheck)
{
    for (int n = 4; n <= 6; ++n)
        for (int m = 0; m <= max_edges(n); ++m) grid_check(classify_class(n, m));
}

TEST(Optimality, PredictionRegimes)
{
    EXPECT_EQ(predicted_optimal(7, 2).regime, Regime::sparse_strict);
    EXPECT_EQ(predicted_optimal(6, 3).regime, Regime::sparse_boundary_even);
    EXPECT_EQ(predicted_optimal(7, 4).regime, Regime::sparse_boundary_odd);
    EXPECT_EQ(predicted_optimal(7, 5).regime, Regime::mid_nonexistence);
    EXPECT_EQ(predicted_optimal(7, 12).regime, Regime::dense_nonexistence);
    EXPECT_EQ(predicted_optimal(7, 20).regime, Regime::near_complete_minus_one);
    EXPECT_EQ(predicted_optimal(7, 21).regime, Regime::complete);
    EXPECT_EQ(predicted_optimal(5, 6).regime, Regime::small_n_exception);
    EXPECT_FALSE(predicted_optimal(7, 12).predicted.has_value());
    EXPECT_TRUE(isomorphic(*predicted_optimal(7, 4).predicted, family::matching_plus_cherry(4)));
}

TEST(Optimality, CharacterizationAgreesAtFourFiveSeven)
{
    for (int n : {4, 5, 7})
        for (const auto& row : verify_characterization(n)) EXPECT_TRUE(row.agree) << "n=" << n << " " << row.detail;
}

TEST(Optimality, SixElevenHasUniqueOptimalGraph)
{
    // K_6 minus a 4-cycle beats every other member of G(6,11) on [0, inf):
    // H_4 would need four disjoint missing edges, which six vertices lack.
    const auto r = classify_class(6, 11);
    ASSERT_TRUE(r.unique);
    EXPECT_TRUE(isomorphic(parse_graph6(r.optimal_members.front()),
                           family::complete_minus(6, family::DenseTemplate::c4)));
    grid_check(r);
}

TEST(Optimality, DenseCounterexamples)
{
    for (int n = 6; n <= 8; ++n)
        for (int k = 2; k <= 6 && 2 * k <= n; ++k) {
            const auto w = dense_counterexample(n, k);
            EXPECT_TRUE(w.certifies_nonexistence()) << n << "," << k;
        }
    EXPECT_THROW(dense_counterexample(6, 4), InvalidArgument);
    EXPECT_THROW(dense_counterexample(5, 2), InvalidArgument);
}

TEST(Optimality, LeastOptimalPair)
{
    const auto w = least_optimal_counterexample(7, 3);
    EXPECT_TRUE(w.matching_matches_closed_form);
    EXPECT_TRUE(w.path_matches_closed_form);
    EXPECT_TRUE(w.certifies_nonexistence());
    ASSERT_TRUE(w.crossing.has_value());
    EXPECT_EQ(*w.crossing, 1);
    EXPECT_FALSE(classify_class(7, 18).least_optimal_exists);
}

TEST(Optimality, Decomposition)
{
    const auto d = structure_decomposition(join(family::complete(2), family::path(4)));
    EXPECT_EQ(d.r, 2);
    EXPECT_EQ(d.rest, family::path(4));
}
