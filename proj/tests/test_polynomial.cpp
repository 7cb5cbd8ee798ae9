#include <gtest/gtest.h>

#include <random>

#include "domopt/polynomial.hpp"
#include "oracles.hpp"

using namespace domopt;

namespace {

IntPoly P(std::initializer_list<long> c)
{
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

// Sign changes of p on a fine double grid, for cross-checking root counts.
int grid_sign_changes(const IntPoly& p, double lo, double hi, int steps)
{
    std::vector<long long> c;
    for (const auto& v : p.coeffs()) c.push_back(v.get_si());
    int changes = 0, last = 0;
    for (int i = 1; i < steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        const double y = oracle::eval(c, x);
        const int s = (y > 1e-9) - (y < -1e-9);
        if (s != 0 && last != 0 && s != last) ++changes;
        if (s != 0) last = s;
    }
    return changes;
}

} // namespace

TEST(Polynomial, ArithmeticAndTrim)
{
    const IntPoly a = P({1, 2, 3}), b = P({0, -2, -3});
    EXPECT_EQ((a + b), P({1}));
    EXPECT_EQ((a - a).degree(), -1);
    EXPECT_EQ(a * b, P({0, -2, -7, -12, -9}));
    EXPECT_EQ(a.derivative(), P({2, 6}));
    EXPECT_EQ(a[7], 0);
    EXPECT_EQ(a.eval(mpq_class(1, 2)), mpq_class(11, 4));
}

TEST(Polynomial, BinomialPowers)
{
    const IntPoly p = one_plus_x_pow(6);
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(p[k], mpz_class(static_cast<long>(oracle::binom(6, k))));
    EXPECT_EQ(pow(P({1, 1}), 6), p);
    EXPECT_EQ(binomial(60, 30), mpz_class("118264581564861424"));
}

TEST(Polynomial, SquarefreeAndGcd)
{
    // (x-1)^2 (x-2)
    const IntPoly p = P({-2, 5, -4, 1});
    EXPECT_EQ(squarefree_part(p), P({2, -3, 1}));
    EXPECT_EQ(deflate(P({2, -3, 1}), mpq_class(1)), P({-2, 1}));
}

TEST(Polynomial, LexOrders)
{
    EXPECT_TRUE(lex_small_x_compare(P({0, 2, 1}), P({0, 1, 5})) > 0);
    EXPECT_TRUE(lex_large_x_compare(P({0, 2, 1}), P({0, 1, 5})) < 0);
    EXPECT_TRUE(lex_small_x_compare(P({1, 2}), P({1, 2})) == 0);
    EXPECT_TRUE(lex_large_x_compare(P({0, 0, 0, 1}), P({9, 9, 9})) > 0);
}

TEST(Polynomial, SturmCounts)
{
    // (x-1)(x-2)(x-3)
    const IntPoly p = P({-6, 11, -6, 1});
    EXPECT_EQ(sturm_root_count(p, Interval::positive_reals()), 3);
    EXPECT_EQ(sturm_root_count(p, Interval{mpq_class(3, 2), mpq_class(5, 2)}), 1);
    EXPECT_EQ(sturm_root_count(p, Interval::unit()), 0);
    // x^2 + 1 has no real roots.
    EXPECT_EQ(sturm_root_count(P({1, 0, 1}), Interval::positive_reals()), 0);
    // x^2 - 2: one positive root, irrational.
    const auto boxes = isolate_roots(P({-2, 0, 1}), Interval::positive_reals());
    ASSERT_EQ(boxes.size(), 1U);
    EXPECT_LT(boxes[0].lo * boxes[0].lo, 2);
    EXPECT_GT(boxes[0].hi * boxes[0].hi, 2);
    EXPECT_FALSE(exact_rational_root(P({-2, 0, 1}), boxes[0]).has_value());
}

TEST(Polynomial, ExactRationalRoot)
{
    // 6x^2 - 5x + 1 = (2x-1)(3x-1)
    const IntPoly p = P({1, -5, 6});
    const auto boxes = isolate_roots(p, Interval::positive_reals());
    ASSERT_EQ(boxes.size(), 2U);
    EXPECT_EQ(*exact_rational_root(p, boxes[0]), mpq_class(1, 3));
    EXPECT_EQ(*exact_rational_root(p, boxes[1]), mpq_class(1, 2));
}

TEST(Polynomial, CompareDominance)
{
    const auto v = compare_on_nonneg(P({0, 3, 3, 1}), P({0, 2, 3, 1}));
    EXPECT_EQ(v.relation, Relation::first_dominates);
    EXPECT_TRUE(v.strict);
    EXPECT_EQ(compare_on_nonneg(P({1, 1}), P({1, 1})).relation, Relation::equal);
    EXPECT_EQ(v.mirrored().relation, Relation::second_dominates);
}

TEST(Polynomial, CompareTouch)
{
    // difference (x-1)^2 >= 0, zero at x = 1
    const auto v = compare_on_nonneg(P({1, 0, 1}), P({0, 2}));
    EXPECT_EQ(v.relation, Relation::first_dominates);
    EXPECT_FALSE(v.strict);
    ASSERT_EQ(v.touches.size(), 1U);
    EXPECT_EQ(*v.touches[0].exact, 1);
}

TEST(Polynomial, CompareCrossingExample)
{
    // K_6 - P_3 against H_2: the difference is x - x^2, crossing at x = 1.
    const IntPoly hk = one_plus_x_pow(6) - P({1, 4});
    const IntPoly kp = one_plus_x_pow(6) - P({1, 3, 1});
    const auto v = compare_on_nonneg(kp, hk);
    EXPECT_EQ(v.relation, Relation::crossing);
    ASSERT_EQ(v.crossings.size(), 1U);
    EXPECT_EQ(*v.crossings[0].exact, 1);
    // K_7 - 3K_2 against K_7 - P_4: the difference 2x^2 - 2x also vanishes at 1.
    const IntPoly a = one_plus_x_pow(7) - P({1, 6});
    const IntPoly b = one_plus_x_pow(7) - P({1, 4, 2});
    const auto w = compare_on_nonneg(a, b);
    ASSERT_EQ(w.crossings.size(), 1U);
    EXPECT_EQ(*w.crossings[0].exact, 1);
}

TEST(Polynomial, CompareOnUnitInterval)
{
    // (2x-1) changes sign inside (0,1); (x-2) does not.
    EXPECT_EQ(compare_on(P({0, 2}), P({1}), Interval::unit()).relation, Relation::crossing);
    EXPECT_EQ(compare_on(P({2}), P({0, 1}), Interval::unit()).relation, Relation::first_dominates);
}

TEST(Polynomial, RootCountMatchesGridOnRandomCubics)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-20, 20);
    for (int rep = 0; rep < 200; ++rep) {
        // Product of three linear factors with small rational roots, so the
        // grid count is reliable.
        IntPoly p = P({1});
        std::vector<double> roots;
        for (int i = 0; i < 3; ++i) {
            const long num = coef(rng) + 21, den = 4;
            p = p * P({-num, den});
            roots.push_back(static_cast<double>(num) / den);
        }
        std::sort(roots.begin(), roots.end());
        if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) continue;
        EXPECT_EQ(sturm_root_count(p, Interval::positive_reals()), grid_sign_changes(p, 0, 20, 20000));
        for (const auto& box : isolate_roots(p, Interval::positive_reals())) {
            const auto r = exact_rational_root(p, box);
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(p.eval(*r), 0);
        }
    }
}
