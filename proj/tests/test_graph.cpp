#include <gtest/gtest.h>

#include "domopt/graph.hpp"
#include "oracles.hpp"

using namespace domopt;

TEST(Graph, EdgeListBasics)
{
    const Graph g = Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(g.order(), 4);
    EXPECT_EQ(g.size(), 3);
    EXPECT_TRUE(g.adjacent(1, 0));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.min_degree(), 1);
    EXPECT_EQ(g.max_degree(), 2);
    EXPECT_EQ(g.closed_neighborhood(1).members(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(Graph, RejectsBadEdges)
{
    EXPECT_THROW(Graph::from_edge_list(3, {{0, 0}}), InvalidArgument);
    EXPECT_THROW(Graph::from_edge_list(3, {{0, 3}}), InvalidArgument);
    EXPECT_THROW(Graph::from_edge_list(3, {{0, 1}, {1, 0}}), InvalidArgument);
    EXPECT_THROW(Graph(63), CapExceeded);
    EXPECT_THROW(Graph::from_rows(2, {2, 0}), InvalidArgument);
}

TEST(Graph, NullGraph)
{
    const Graph g;
    EXPECT_EQ(g.order(), 0);
    EXPECT_EQ(g.size(), 0);
    EXPECT_THROW((void)g.min_degree(), InvalidArgument);
}

TEST(Graph, ComplementAndPermute)
{
    const Graph p4 = family::path(4);
    const Graph c = p4.complement();
    EXPECT_EQ(c.size(), 3);
    EXPECT_EQ(c.complement(), p4);
    const std::vector<int> order{3, 2, 1, 0};
    EXPECT_EQ(p4.permuted(order), p4);
    const std::vector<int> swap{1, 0, 2, 3};
    const Graph q = p4.permuted(swap);
    EXPECT_TRUE(q.adjacent(0, 1));
    EXPECT_TRUE(q.adjacent(0, 2));
    EXPECT_TRUE(oracle::isomorphic(p4, q));
}

TEST(Graph, UniversalAndIsolated)
{
    const Graph s = family::star(5);
    EXPECT_EQ(s.universal_vertices().members(), std::vector<int>{0});
    const Graph m = family::matching_plus_isolates(2, 2);
    EXPECT_EQ(m.order(), 6);
    EXPECT_EQ(m.isolated_vertices().count(), 2);
    EXPECT_TRUE(family::complete(4).universal_vertices() == VertexSet::full(4));
}

TEST(Graph, JoinAndUnion)
{
    const Graph j = join(family::complete(1), family::matching_plus_isolates(2, 0));
    EXPECT_EQ(j.order(), 5);
    EXPECT_EQ(j.size(), 6);
    EXPECT_EQ(j.degree(0), 4);
    const Graph u = disjoint_union(family::path(3), family::complete(2));
    EXPECT_EQ(u.order(), 5);
    EXPECT_EQ(u.size(), 3);
    EXPECT_FALSE(u.adjacent(2, 3));
}

TEST(Graph, Rewire)
{
    const Graph g = Graph::from_edge_list(4, {{0, 1}, {1, 2}});
    const Graph h = rewire_isolated(g, {0, 1}, 3);
    EXPECT_FALSE(h.adjacent(0, 1));
    EXPECT_TRUE(h.adjacent(0, 3));
    EXPECT_EQ(h.size(), 2);
    EXPECT_THROW(rewire_isolated(g, {0, 1}, 2), InvalidArgument);
}

TEST(Graph, Families)
{
    EXPECT_EQ(family::cycle(5).size(), 5);
    EXPECT_EQ(family::matching_plus_cherry(3).size(), 3);
    EXPECT_EQ(family::matching_plus_cherry(3).order(), 5);
    const Graph ms = family::matching_plus_star(7, 2);
    EXPECT_EQ(ms.order(), 7);
    EXPECT_EQ(ms.size(), 5);
    EXPECT_EQ(family::complete_minus_matching(6, 2).size(), 13);
    EXPECT_EQ(family::complete_minus_path(7, 3).size(), 18);
    for (auto t : {family::DenseTemplate::p3, family::DenseTemplate::k3, family::DenseTemplate::c4,
                   family::DenseTemplate::k3_pendant, family::DenseTemplate::k4_minus_e, family::DenseTemplate::k4})
        EXPECT_EQ(family::complete_minus(7, t).size(), 21 - static_cast<int>(family::template_edges(t).size()));
}

TEST(Graph, FamilyByName)
{
    const int p[] = {6, 2};
    EXPECT_EQ(family::by_name("complete-minus-matching", p), family::complete_minus_matching(6, 2));
    const int q[] = {5};
    EXPECT_EQ(family::by_name("complete-minus-c4", q), family::complete_minus(5, family::DenseTemplate::c4));
    EXPECT_THROW(family::by_name("nope", q), InvalidArgument);
    EXPECT_THROW(family::by_name("complete", p), InvalidArgument);
}

TEST(Graph, ParseEdgeList)
{
    const Graph g = parse_edge_list("4; 0 1; 1 2; 2 3");
    EXPECT_EQ(g, family::path(4));
    EXPECT_EQ(parse_edge_list("3\n0 1\n"), Graph::from_edge_list(3, {{0, 1}}));
    EXPECT_EQ(parse_edge_list(to_edge_list(family::cycle(6))), family::cycle(6));
    try {
        (void)parse_edge_list("4; 0 1; 1 x");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 10U);
    }
}
