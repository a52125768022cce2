#pragma once

#include <vector>

#include "gmg/graph.hpp"
#include "gmg/transformation.hpp"

namespace fixture {

inline gmg::Attribute lab(gmg::Label l) { return gmg::Attribute::label(l); }

// The pair of labeled graphs from the worked figure, 0-based.
inline gmg::AttributedGraph fig_g()
{
    std::vector<gmg::Edge> edges = {{1, 2, lab(1)}, {0, 3, lab(3)}, {1, 3, lab(2)}, {2, 3, lab(3)}};
    return gmg::AttributedGraph::build(4, {lab(1), lab(2), lab(2), lab(3)}, edges, "G");
}

inline gmg::AttributedGraph fig_g2()
{
    std::vector<gmg::Edge> edges = {{0, 2, lab(4)}, {1, 2, lab(1)}};
    return gmg::AttributedGraph::build(3, {lab(1), lab(2), lab(2)}, edges, "G2");
}

// pi = (1,3,2,4) with vertex 4 removed.
inline gmg::Transformation fig_pi() { return gmg::Transformation::from_forward({0, 2, 1, 3}, 4, 3); }

inline std::vector<std::size_t> fig_pi_raw() { return {0, 2, 1, 3}; }

} // namespace fixture

#include <string>

namespace fixture {

// Labeled graph as GXL with attributes "chem" (vertices) and "valence" (edges).
inline std::string to_gxl(const gmg::AttributedGraph& g)
{
    std::string s = "<?xml version=\"1.0\"?>\n<gxl><graph id=\"" + g.id() + "\" edgemode=\"undirected\">\n";
    for (std::size_t i = 0; i < g.order(); ++i)
        s += "<node id=\"n" + std::to_string(i) + "\"><attr name=\"chem\"><int>" +
             std::to_string(g.vertex_attr(i).as_label()) + "</int></attr></node>\n";
    for (const auto& e : g.edges())
        s += "<edge from=\"n" + std::to_string(e.u) + "\" to=\"n" + std::to_string(e.v) +
             "\"><attr name=\"valence\"><int>" + std::to_string(e.attr.as_label()) + "</int></attr></edge>\n";
    return s + "</graph></gxl>\n";
}

} // namespace fixture
