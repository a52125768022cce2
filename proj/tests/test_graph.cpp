#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "gmg/graph.hpp"
#include "gmg/transformation.hpp"

using namespace gmg;
using fixture::lab;

TEST_CASE("figure graph builds with symmetric adjacency")
{
    AttributedGraph g = fixture::fig_g();
    CHECK(g.order() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK(g.edge_attr(3, 0) == lab(3));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.edge_attr(0, 1) == lab(0));
    CHECK(g.degree(3) == 3);
    auto edges = g.edges();
    REQUIRE(edges.size() == 4);
    for (const auto& e : edges)
        CHECK(e.u < e.v);
}

TEST_CASE("single vertex graph")
{
    AttributedGraph g = AttributedGraph::build(1, {lab(1)}, {}, "one");
    CHECK(g.order() == 1);
    CHECK(g.edge_count() == 0);
    CHECK_FALSE(g.has_edge(0, 0));
}

TEST_CASE("invalid graphs are rejected")
{
    std::vector<Edge> loop = {{0, 0, lab(1)}};
    CHECK_THROWS_AS(AttributedGraph::build(3, {lab(1), lab(1), lab(1)}, loop, ""), std::invalid_argument);
    std::vector<Edge> out_of_range = {{0, 3, lab(1)}};
    CHECK_THROWS_AS(AttributedGraph::build(3, {lab(1), lab(1), lab(1)}, out_of_range, ""), std::invalid_argument);
    std::vector<Edge> dup = {{0, 1, lab(1)}, {1, 0, lab(2)}};
    CHECK_THROWS_AS(AttributedGraph::build(3, {lab(1), lab(1), lab(1)}, dup, ""), std::invalid_argument);
    CHECK_THROWS_AS(AttributedGraph::build(2, {lab(1), Attribute::vector({1.0})}, {}, ""), std::invalid_argument);
    CHECK_THROWS_AS(AttributedGraph::build(3, {lab(1)}, {}, ""), std::invalid_argument);
}

TEST_CASE("attribute variants")
{
    Attribute v = Attribute::vector({1.0, 2.0});
    CHECK(v.is_vector());
    CHECK(v.dimension() == 2);
    CHECK_THROWS(v.as_label());
    CHECK(lab(2).as_label() == 2);
    CHECK_FALSE(same_space(v, lab(1)));
    CHECK(same_space(v, Attribute::vector({0.0, 0.0})));
}

TEST_CASE("same_content ignores ids")
{
    AttributedGraph g = fixture::fig_g();
    AttributedGraph h = g.with_id("other");
    CHECK(g.same_content(h, 0.0));
    CHECK_FALSE(g == h);
    CHECK_FALSE(g.same_content(fixture::fig_g2(), 0.0));
}

TEST_CASE("transformation from the figure")
{
    Transformation t = fixture::fig_pi();
    CHECK(t.removed() == 3);
    CHECK_FALSE(t.substitutes(3));
    CHECK(t.reverse() == std::vector<std::size_t>{0, 2, 1});
    CHECK(t.substitution_count() == 3);
    CHECK(t.inverse().forward() == std::vector<std::size_t>{0, 2, 1});
    CHECK(t.inverse().reverse() == std::vector<std::size_t>{0, 2, 1, 3});
}

TEST_CASE("transformation errors and identity")
{
    CHECK_THROWS_AS(Transformation::from_forward({1, 1, 0}, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(Transformation::from_forward({5, 0}, 2, 3), std::invalid_argument);
    Transformation id = Transformation::identity(3);
    CHECK(id.forward() == id.reverse());
    Transformation both_removed = Transformation::from_forward({2, 2}, 2, 2);
    CHECK(both_removed.is_inserted(0));
    CHECK(both_removed.is_inserted(1));
}

TEST_CASE("classify_edges on the figure")
{
    EdgeClassification c = classify_edges(fixture::fig_pi(), fixture::fig_g(), fixture::fig_g2());
    CHECK(c.substituted == std::vector<VertexPair>{{1, 2}});
    CHECK(c.removed == std::vector<VertexPair>{{0, 3}, {1, 3}, {2, 3}});
    CHECK(c.inserted == std::vector<VertexPair>{{0, 2}});
}

TEST_CASE("classify_edges degenerate cases")
{
    AttributedGraph g = fixture::fig_g();
    EdgeClassification same = classify_edges(Transformation::identity(4), g, g);
    CHECK(same.substituted.size() == 4);
    CHECK(same.removed.empty());
    CHECK(same.inserted.empty());

    AttributedGraph g2 = fixture::fig_g2();
    EdgeClassification gone = classify_edges(Transformation::from_forward({3, 3, 3, 3}, 4, 3), g, g2);
    CHECK(gone.substituted.empty());
    CHECK(gone.removed.size() == 4);
    CHECK(gone.inserted.size() == 2);
    CHECK_THROWS_AS(check_orders(Transformation::identity(3), g, g2), std::invalid_argument);
}
