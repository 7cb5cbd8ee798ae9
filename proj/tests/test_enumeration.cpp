#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "domopt/enumeration.hpp"
#include "oracles.hpp"

using namespace domopt;

namespace {

Graph shuffled(const Graph& g, std::mt19937_64& rng)
{
    std::vector<int> order(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return g.permuted(order);
}

} // namespace

TEST(Enumeration, TotalsMatchKnownCounts)
{
    const std::size_t totals[] = {1, 1, 2, 4, 11, 34, 156, 1044};
    for (int n = 1; n <= 7; ++n) {
        std::size_t sum = 0;
        for (const auto& level : enumerate_all(n)) sum += level.size();
        EXPECT_EQ(sum, totals[n]) << "n=" << n;
    }
}

TEST(Enumeration, PerSizeCountsOrderSeven)
{
    const std::size_t expect[] = {1, 1, 2, 5, 10, 21, 41, 65, 97, 131, 148, 148, 131, 97, 65, 41, 21, 10, 5, 2, 1, 1};
    const auto levels = enumerate_all(7);
    ASSERT_EQ(levels.size(), 22U);
    for (int m = 0; m <= 21; ++m) EXPECT_EQ(levels[static_cast<std::size_t>(m)].size(), expect[m]) << "m=" << m;
}

TEST(Enumeration, SweepAgreesWithGrowth)
{
    for (int n = 2; n <= 6; ++n) {
        const auto sweep = class_sizes_by_sweep(n);
        for (int m = 0; m <= max_edges(n); ++m) EXPECT_EQ(sweep[static_cast<std::size_t>(m)], class_size(n, m));
    }
}

TEST(Enumeration, ClassMembersArePairwiseNonIsomorphic)
{
    for (int m = 0; m <= 10; ++m) {
        const auto cls = enumerate_class(5, m);
        for (std::size_t i = 0; i < cls.size(); ++i) {
            EXPECT_EQ(cls[i].size(), m);
            for (std::size_t j = i + 1; j < cls.size(); ++j) EXPECT_FALSE(oracle::isomorphic(cls[i], cls[j]));
        }
    }
}

TEST(Enumeration, CanonicalFormIsLabelInvariant)
{
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 2 + rep % 9;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        EXPECT_EQ(canonical_form(g), canonical_form(shuffled(g, rng)));
    }
}

TEST(Enumeration, IsomorphismAgreesWithOracle)
{
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 400; ++rep) {
        const int n = 3 + rep % 4;
        const Graph a = oracle::random_graph(n, 0.5, rng);
        const Graph b = rep % 2 ? shuffled(a, rng) : oracle::random_graph(n, 0.5, rng);
        EXPECT_EQ(isomorphic(a, b), oracle::isomorphic(a, b));
    }
}

TEST(Enumeration, RegularGraphsCanonicalize)
{
    // Vertex-transitive inputs defeat refinement, so the search must branch.
    const Graph petersen = Graph::from_edge_list(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                      {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 10; ++rep) EXPECT_EQ(canonical_form(petersen), canonical_form(shuffled(petersen, rng)));
    EXPECT_NE(canonical_form(petersen), canonical_form(family::cycle(10)));
}

TEST(Enumeration, Caps)
{
    EXPECT_THROW(enumerate_class(11, 3), CapExceeded);
    EXPECT_THROW(enumerate_class(5, 11), InvalidArgument);
    EXPECT_THROW(canonical_form(Graph(11)), CapExceeded);
}

TEST(Enumeration, ClassIndex)
{
    const auto idx = class_index(4, 3);
    EXPECT_EQ(idx.members.size(), 3U);
    EXPECT_TRUE(std::is_sorted(idx.members.begin(), idx.members.end()));
}

TEST(Enumeration, IngestDeduplicates)
{
    // Two labelings of P_3 plus K_1 and one 2K_2.
    std::istringstream file("# class\n" + to_graph6(Graph::from_edge_list(4, {{0, 1}, {1, 2}})) + "\n" +
                            to_graph6(Graph::from_edge_list(4, {{2, 3}, {3, 0}})) + "\n" +
                            to_graph6(Graph::from_edge_list(4, {{0, 1}, {2, 3}})) + "\n");
    const auto cls = ingest_graph6_class(file, 4, 2);
    EXPECT_EQ(cls.size(), 2U);
}

TEST(Enumeration, IngestReportsOffsets)
{
    std::istringstream wrong_size("C~\n");
    EXPECT_THROW(ingest_graph6_class(wrong_size, 4, 2), ParseError);
    std::istringstream malformed("Ch\nC!\n");
    try {
        (void)ingest_graph6_class(malformed, 4, 3);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4U);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}
