#pragma once

#include <cstddef>
#include <vector>

#include "gmg/graph.hpp"

namespace gmg {

/**
 * Vertex transformation (error-correcting matching) from a source graph of
 * order n to a target graph of order n'.
 *
 * forward[i] is either a target vertex in [0, n') or the removal marker n'.
 * reverse[k] is either a source vertex in [0, n) or the insertion marker n.
 * The reverse map is always derived from the forward one.
 */
class Transformation {
public:
    Transformation() = default;

    // Throws std::invalid_argument on an out-of-range entry or a target hit twice.
    static Transformation from_forward(std::vector<std::size_t> forward, std::size_t source_order,
                                       std::size_t target_order);
    static Transformation identity(std::size_t order);

    std::size_t source_order() const { return forward_.size(); }
    std::size_t target_order() const { return reverse_.size(); }

    std::size_t removed() const { return target_order(); }
    std::size_t inserted() const { return source_order(); }

    const std::vector<std::size_t>& forward() const { return forward_; }
    const std::vector<std::size_t>& reverse() const { return reverse_; }

    std::size_t operator[](std::size_t i) const { return forward_[i]; }

    bool substitutes(std::size_t i) const { return forward_[i] < target_order(); }
    bool is_inserted(std::size_t k) const { return reverse_[k] >= source_order(); }

    std::size_t substitution_count() const;

    // Transformation from the target back to the source.
    Transformation inverse() const;

    friend bool operator==(const Transformation&, const Transformation&) = default;
    friend auto operator<=>(const Transformation& a, const Transformation& b)
    {
        return a.forward_ <=> b.forward_;
    }

private:
    std::vector<std::size_t> forward_;
    std::vector<std::size_t> reverse_;
};

struct EdgeClassification {
    std::vector<VertexPair> substituted; // source indices, u < v
    std::vector<VertexPair> removed;     // source indices, u < v
    std::vector<VertexPair> inserted;    // target indices, u < v
};

// Edge operations induced by a vertex transformation from g to g2.
EdgeClassification classify_edges(const Transformation& t, const AttributedGraph& g, const AttributedGraph& g2);

// Throws std::invalid_argument if t is not a transformation from g to g2.
void check_orders(const Transformation& t, const AttributedGraph& g, const AttributedGraph& g2);

} // namespace gmg
