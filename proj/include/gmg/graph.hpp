#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gmg {

using Label = std::uint32_t;

enum class AttributeKind { Label, Vector };

/// Vertex or edge attribute: either an integer label or a real vector.
class Attribute {
public:
    Attribute() : value_(Label{0}) {}

    static Attribute label(Label value) { return Attribute(value); }
    static Attribute vector(std::vector<double> values) { return Attribute(std::move(values)); }

    AttributeKind kind() const
    {
        return std::holds_alternative<Label>(value_) ? AttributeKind::Label : AttributeKind::Vector;
    }
    bool is_label() const { return kind() == AttributeKind::Label; }
    bool is_vector() const { return kind() == AttributeKind::Vector; }

    // Throws std::logic_error when the variant does not match.
    Label as_label() const;
    std::span<const double> as_vector() const;

    // 0 for labels.
    std::size_t dimension() const;

    friend bool operator==(const Attribute&, const Attribute&) = default;

private:
    explicit Attribute(Label v) : value_(v) {}
    explicit Attribute(std::vector<double> v) : value_(std::move(v)) {}

    std::variant<Label, std::vector<double>> value_;
};

// Kind and dimension agree.
bool same_space(const Attribute& a, const Attribute& b);

struct Edge {
    std::size_t u;
    std::size_t v;
    Attribute attr;
};

using VertexPair = std::pair<std::size_t, std::size_t>;

/**
 * Simple undirected attributed graph stored as dense matrices.
 *
 * Vertices are 0-based. The adjacency matrix is symmetric with a zero
 * diagonal, and edge attributes are symmetric on edges. Positions that are
 * not edges hold a default label-0 attribute which no cost computation reads.
 * Graphs are immutable once built.
 */
class AttributedGraph {
public:
    AttributedGraph() = default;

    /**
     * Validates and builds a graph. Throws std::invalid_argument on a
     * self-loop, an out-of-range endpoint, a duplicate edge, a vertex
     * attribute count different from `order`, or mixed attribute spaces
     * among vertices or among edges.
     */
    static AttributedGraph build(std::size_t order, std::vector<Attribute> vertex_attrs,
                                 std::span<const Edge> edges, std::string id = {});

    std::size_t order() const { return vertex_attrs_.size(); }
    const std::string& id() const { return id_; }

    const Attribute& vertex_attr(std::size_t i) const { return vertex_attrs_[i]; }
    const std::vector<Attribute>& vertex_attrs() const { return vertex_attrs_; }

    bool has_edge(std::size_t i, std::size_t j) const { return adjacency_[i * order() + j] != 0; }
    const Attribute& edge_attr(std::size_t i, std::size_t j) const { return edge_attrs_[i * order() + j]; }

    std::size_t edge_count() const { return edge_count_; }
    std::size_t degree(std::size_t i) const;
    std::vector<std::size_t> neighbors(std::size_t i) const;

    // Undirected edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    AttributedGraph with_id(std::string id) const;

    // Equality ignores the id and compares vector coordinates within `tolerance`.
    bool same_content(const AttributedGraph& other, double tolerance = 0.0) const;

    friend bool operator==(const AttributedGraph& a, const AttributedGraph& b)
    {
        return a.id_ == b.id_ && a.same_content(b);
    }

private:
    std::vector<Attribute> vertex_attrs_;
    std::vector<std::uint8_t> adjacency_;
    std::vector<Attribute> edge_attrs_;
    std::size_t edge_count_ = 0;
    std::string id_;
};

} // namespace gmg
