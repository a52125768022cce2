#include "gmg/transformation.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace gmg {

Transformation Transformation::from_forward(std::vector<std::size_t> forward, std::size_t source_order,
                                            std::size_t target_order)
{
    if (forward.size() != source_order)
        throw std::invalid_argument("transformation: forward map has length " + std::to_string(forward.size()) +
                                    ", source order is " + std::to_string(source_order));
    Transformation t;
    t.reverse_.assign(target_order, source_order);
    for (std::size_t i = 0; i < forward.size(); ++i) {
        std::size_t k = forward[i];
        if (k > target_order)
            throw std::invalid_argument("transformation: entry " + std::to_string(k) + " at position " +
                                        std::to_string(i) + " exceeds removal marker " +
                                        std::to_string(target_order));
        if (k == target_order)
            continue;
        if (t.reverse_[k] != source_order)
            throw std::invalid_argument("transformation: target " + std::to_string(k) +
                                        " substituted more than once");
        t.reverse_[k] = i;
    }
    t.forward_ = std::move(forward);
    return t;
}

Transformation Transformation::identity(std::size_t order)
{
    std::vector<std::size_t> forward(order);
    std::iota(forward.begin(), forward.end(), std::size_t{0});
    return from_forward(std::move(forward), order, order);
}

std::size_t Transformation::substitution_count() const
{
    std::size_t s = 0;
    for (std::size_t i = 0; i < source_order(); ++i)
        s += substitutes(i) ? 1 : 0;
    return s;
}

Transformation Transformation::inverse() const
{
    Transformation t;
    t.forward_ = reverse_;
    t.reverse_ = forward_;
    return t;
}

void check_orders(const Transformation& t, const AttributedGraph& g, const AttributedGraph& g2)
{
    if (t.source_order() != g.order() || t.target_order() != g2.order())
        throw std::invalid_argument("transformation orders (" + std::to_string(t.source_order()) + "," +
                                    std::to_string(t.target_order()) + ") do not match graph orders (" +
                                    std::to_string(g.order()) + "," + std::to_string(g2.order()) + ")");
}

EdgeClassification classify_edges(const Transformation& t, const AttributedGraph& g, const AttributedGraph& g2)
{
    check_orders(t, g, g2);
    EdgeClassification out;
    for (std::size_t i = 0; i < g.order(); ++i) {
        for (std::size_t j = i + 1; j < g.order(); ++j) {
            if (!g.has_edge(i, j))
                continue;
            if (t.substitutes(i) && t.substitutes(j) && g2.has_edge(t[i], t[j]))
                out.substituted.emplace_back(i, j);
            else
                out.removed.emplace_back(i, j);
        }
    }
    for (std::size_t k = 0; k < g2.order(); ++k) {
        for (std::size_t l = k + 1; l < g2.order(); ++l) {
            if (!g2.has_edge(k, l))
                continue;
            const auto& rev = t.reverse();
            if (t.is_inserted(k) || t.is_inserted(l) || !g.has_edge(rev[k], rev[l]))
                out.inserted.emplace_back(k, l);
        }
    }
    return out;
}

} // namespace gmg
