#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gmg/graph.hpp"
#include "gmg/transformation.hpp"

namespace gmg {

// Substitution cost c * (1 - delta(x, y)) on labels.
struct LabelDelta {
    double cost = 1.0;
    friend bool operator==(const LabelDelta&, const LabelDelta&) = default;
};

// Substitution cost ||x - y||^2 on real vectors.
struct SquaredEuclidean {
    friend bool operator==(const SquaredEuclidean&, const SquaredEuclidean&) = default;
};

// Edge substitution is free (unlabeled edges).
struct ZeroCost {
    friend bool operator==(const ZeroCost&, const ZeroCost&) = default;
};

using VertexSubstitution = std::variant<LabelDelta, SquaredEuclidean>;
using EdgeSubstitution = std::variant<LabelDelta, ZeroCost>;

struct CostConstants {
    double vertex_removal = 3.0;
    double vertex_insertion = 3.0;
    double edge_removal = 3.0;
    double edge_insertion = 3.0;
    friend bool operator==(const CostConstants&, const CostConstants&) = default;
};

/**
 * Edit-cost model with constant removal/insertion costs and one substitution
 * function per element type.
 *
 * Construction rejects negative or non-finite constants, a non-positive
 * LabelDelta cost, and a LabelDelta cost above removal + insertion of the same
 * element type (GED is then no longer the cost of a minimal transformation).
 */
class CostModel {
public:
    // Labeled model with c_vs = c_es = 1 and removal/insertion costs 3.
    CostModel() : CostModel(CostConstants{}, LabelDelta{}, LabelDelta{}) {}
    CostModel(CostConstants constants, VertexSubstitution vertex_subst, EdgeSubstitution edge_subst);

    // c_vs = c_es = 1, all removals/insertions 3: label vertices and label edges.
    static CostModel labeled(double c_vs = 1.0, double c_es = 1.0, CostConstants constants = {});

    double vertex_removal() const { return constants_.vertex_removal; }
    double vertex_insertion() const { return constants_.vertex_insertion; }
    double edge_removal() const { return constants_.edge_removal; }
    double edge_insertion() const { return constants_.edge_insertion; }
    const CostConstants& constants() const { return constants_; }

    const VertexSubstitution& vertex_subst() const { return vertex_subst_; }
    const EdgeSubstitution& edge_subst() const { return edge_subst_; }

    bool vertex_labels() const { return std::holds_alternative<LabelDelta>(vertex_subst_); }
    bool edge_labels() const { return std::holds_alternative<LabelDelta>(edge_subst_); }

    // Throws std::invalid_argument when the attribute variant does not match the mode.
    double vertex_subst_cost(const Attribute& a, const Attribute& b) const;
    double edge_subst_cost(const Attribute& a, const Attribute& b) const;

    // True when symmetric costs make d(g, g2) = d(g2, g).
    bool symmetric() const;

    friend bool operator==(const CostModel&, const CostModel&) = default;

private:
    CostConstants constants_;
    VertexSubstitution vertex_subst_;
    EdgeSubstitution edge_subst_;
};

inline double vertex_subst_cost(const CostModel& model, const Attribute& a, const Attribute& b)
{
    return model.vertex_subst_cost(a, b);
}

double vertex_cost(const CostModel& model, const Transformation& t, std::span<const Attribute> phi,
                   std::span<const Attribute> phi2);

// Directed double-count form: every undirected edge operation contributes twice.
double edge_cost(const CostModel& model, const Transformation& t, const AttributedGraph& g,
                 const AttributedGraph& g2);

// vertex_cost + edge_cost / 2.
double transformation_cost(const CostModel& model, const Transformation& t, const AttributedGraph& g,
                           const AttributedGraph& g2);

/**
 * For squared Euclidean substitution, the removal+insertion bound cannot be
 * checked statically. Returns a description of the violation when two of the
 * given vertex attributes are farther apart (squared) than c_vr + c_vi, using
 * the bounding-box diagonal as a cheap upper estimate. Empty when fine.
 */
std::string metric_guard_warning(const CostModel& model, std::span<const Attribute> vertex_attrs);

} // namespace gmg
