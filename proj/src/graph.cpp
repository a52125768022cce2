#include "gmg/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmg {

Label Attribute::as_label() const
{
    if (const auto* v = std::get_if<Label>(&value_))
        return *v;
    throw std::logic_error("attribute is a vector, not a label");
}

std::span<const double> Attribute::as_vector() const
{
    if (const auto* v = std::get_if<std::vector<double>>(&value_))
        return *v;
    throw std::logic_error("attribute is a label, not a vector");
}

std::size_t Attribute::dimension() const
{
    if (const auto* v = std::get_if<std::vector<double>>(&value_))
        return v->size();
    return 0;
}

bool same_space(const Attribute& a, const Attribute& b)
{
    return a.kind() == b.kind() && a.dimension() == b.dimension();
}

AttributedGraph AttributedGraph::build(std::size_t order, std::vector<Attribute> vertex_attrs,
                                       std::span<const Edge> edges, std::string id)
{
    if (vertex_attrs.size() != order)
        throw std::invalid_argument("graph '" + id + "': expected " + std::to_string(order) +
                                    " vertex attributes, got " + std::to_string(vertex_attrs.size()));
    for (std::size_t i = 1; i < order; ++i) {
        if (!same_space(vertex_attrs[i], vertex_attrs[0]))
            throw std::invalid_argument("graph '" + id + "': mixed vertex attribute variants");
    }

    AttributedGraph g;
    g.id_ = std::move(id);
    g.vertex_attrs_ = std::move(vertex_attrs);
    g.adjacency_.assign(order * order, 0);
    g.edge_attrs_.assign(order * order, Attribute{});

    for (const Edge& e : edges) {
        if (e.u >= order || e.v >= order)
            throw std::invalid_argument("graph '" + g.id_ + "': edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") out of range");
        if (e.u == e.v)
            throw std::invalid_argument("graph '" + g.id_ + "': self-loop on vertex " + std::to_string(e.u));
        if (!edges.empty() && !same_space(e.attr, edges.front().attr))
            throw std::invalid_argument("graph '" + g.id_ + "': mixed edge attribute variants");
        std::size_t a = e.u * order + e.v;
        std::size_t b = e.v * order + e.u;
        if (g.adjacency_[a])
            throw std::invalid_argument("graph '" + g.id_ + "': duplicate edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
        g.adjacency_[a] = g.adjacency_[b] = 1;
        g.edge_attrs_[a] = g.edge_attrs_[b] = e.attr;
        ++g.edge_count_;
    }
    return g;
}

std::size_t AttributedGraph::degree(std::size_t i) const
{
    std::size_t d = 0;
    for (std::size_t j = 0; j < order(); ++j)
        d += adjacency_[i * order() + j];
    return d;
}

std::vector<std::size_t> AttributedGraph::neighbors(std::size_t i) const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < order(); ++j)
        if (adjacency_[i * order() + j])
            out.push_back(j);
    return out;
}

std::vector<Edge> AttributedGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < order(); ++i)
        for (std::size_t j = i + 1; j < order(); ++j)
            if (has_edge(i, j))
                out.push_back({i, j, edge_attr(i, j)});
    return out;
}

AttributedGraph AttributedGraph::with_id(std::string id) const
{
    AttributedGraph copy = *this;
    copy.id_ = std::move(id);
    return copy;
}

namespace {

bool attr_close(const Attribute& a, const Attribute& b, double tolerance)
{
    if (!same_space(a, b))
        return false;
    if (a.is_label())
        return a.as_label() == b.as_label();
    auto x = a.as_vector();
    auto y = b.as_vector();
    for (std::size_t k = 0; k < x.size(); ++k)
        if (std::abs(x[k] - y[k]) > tolerance)
            return false;
    return true;
}

} // namespace

bool AttributedGraph::same_content(const AttributedGraph& other, double tolerance) const
{
    if (order() != other.order() || edge_count_ != other.edge_count_)
        return false;
    if (adjacency_ != other.adjacency_)
        return false;
    for (std::size_t i = 0; i < order(); ++i)
        if (!attr_close(vertex_attrs_[i], other.vertex_attrs_[i], tolerance))
            return false;
    for (std::size_t i = 0; i < order(); ++i)
        for (std::size_t j = i + 1; j < order(); ++j)
            if (has_edge(i, j) && !attr_close(edge_attr(i, j), other.edge_attr(i, j), tolerance))
                return false;
    return true;
}

} // namespace gmg
