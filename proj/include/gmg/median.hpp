#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmg/edit_cost.hpp"
#include "gmg/ged.hpp"
#include "gmg/graph.hpp"
#include "gmg/transformation.hpp"

namespace gmg {

struct SetMedianResult {
    std::size_t median_index = 0;
    // pairwise[p][q] estimates d(G_p, G_q); the diagonal holds identity transformations.
    std::vector<std::vector<GedResult>> pairwise;
    double sod = 0.0;
    // Transformations from the set median to each collection graph.
    std::vector<Transformation> transformations;
};

// Row-sum minimizer over all ordered pairs; ties go to the smallest index.
SetMedianResult set_median(const CostModel& model, std::span<const AttributedGraph> collection,
                           const GedSolverConfig& solver);

struct MedianState {
    AttributedGraph median;
    std::vector<Transformation> transformations;
    double sod_upper = 0.0;
    std::size_t iteration = 0;
};

struct SubstitutedVertex {
    std::size_t graph;
    std::size_t vertex;
};

struct SubstitutedEdge {
    std::size_t graph;
    std::size_t u;
    std::size_t v;
};

/// Collection elements substituted to each median vertex and to each median vertex pair.
class SubstitutionSets {
public:
    SubstitutionSets(std::size_t median_order, std::size_t collection_size)
        : order_(median_order), collection_size_(collection_size), vertex_sets_(median_order),
          edge_sets_(median_order * median_order)
    {
    }

    std::size_t median_order() const { return order_; }
    std::size_t collection_size() const { return collection_size_; }

    std::vector<SubstitutedVertex>& vertex_set(std::size_t i) { return vertex_sets_[i]; }
    const std::vector<SubstitutedVertex>& vertex_set(std::size_t i) const { return vertex_sets_[i]; }

    // Symmetric: (i, j) and (j, i) share storage.
    std::vector<SubstitutedEdge>& edge_set(std::size_t i, std::size_t j) { return edge_sets_[slot(i, j)]; }
    const std::vector<SubstitutedEdge>& edge_set(std::size_t i, std::size_t j) const
    {
        return edge_sets_[slot(i, j)];
    }

private:
    std::size_t slot(std::size_t i, std::size_t j) const { return i < j ? i * order_ + j : j * order_ + i; }

    std::size_t order_;
    std::size_t collection_size_;
    std::vector<std::vector<SubstitutedVertex>> vertex_sets_;
    std::vector<std::vector<SubstitutedEdge>> edge_sets_;
};

SubstitutionSets collect_substitution_sets(const MedianState& state, std::span<const AttributedGraph> collection);

// Majority label per vertex; ties to the smallest label; empty sets keep `current`.
std::vector<Attribute> update_vertex_labels(const SubstitutionSets& sets, std::span<const AttributedGraph> collection,
                                            std::span<const Attribute> current);

// Mean substituted vector per vertex; empty sets keep `current`.
std::vector<Attribute> update_vertex_vectors(const SubstitutionSets& sets,
                                             std::span<const AttributedGraph> collection,
                                             std::span<const Attribute> current);

struct EdgeUpdate {
    std::size_t order = 0;
    std::vector<std::uint8_t> adjacency; // order x order, symmetric
    std::vector<Attribute> attrs;        // order x order, label 0 off edges
};

// Majority edge label, and an edge iff the strict count threshold holds.
EdgeUpdate update_edges_labeled(const SubstitutionSets& sets, std::span<const AttributedGraph> collection,
                                const CostModel& model);

// Edge iff |S_ij| (c_er + c_ei) > |collection| c_er; edges carry label 1.
EdgeUpdate update_edges_unlabeled(const SubstitutionSets& sets, const CostModel& model);

// Median graph minimizing the fixed-transformation objective coordinate-wise.
AttributedGraph update_median_graph(const MedianState& state, std::span<const AttributedGraph> collection,
                                    const CostModel& model);

struct TransformationUpdate {
    std::vector<Transformation> transformations;
    std::vector<double> costs;
    std::size_t changed = 0;
    double sod_upper = 0.0;
};

/**
 * Re-solves GED from the median to every collection graph. A new
 * transformation replaces the previous one only if its cost is no higher than
 * the previous transformation's cost against the current median.
 */
TransformationUpdate update_transformations(const MedianState& state, std::span<const AttributedGraph> collection,
                                            const CostModel& model, const GedSolverConfig& solver);

struct DescentConfig {
    std::size_t max_iters = 100;
    GedSolverConfig phase1;
    GedSolverConfig phase2;
};

struct IterationRecord {
    std::size_t iteration = 0;
    double sod_upper = 0.0;
    std::size_t changed_transformations = 0;
    double elapsed_seconds = 0.0;
};

struct MedianResult {
    AttributedGraph median;
    std::vector<Transformation> transformations;
    std::size_t set_median_index = 0;
    double set_median_sod = 0.0;
    // sod_trace[0] is the set-median SOD, sod_trace[t] the value after iteration t.
    std::vector<double> sod_trace;
    std::vector<IterationRecord> iterations;
    bool converged = false;
    double phase1_seconds = 0.0;
    double phase2_seconds = 0.0;

    double sod() const { return sod_trace.back(); }
};

MedianResult compute_median(const CostModel& model, std::span<const AttributedGraph> collection,
                            const DescentConfig& config);

// Sum of transformation costs from `median` to each collection graph.
double sum_of_costs(const CostModel& model, const AttributedGraph& median, std::span<const Transformation> ts,
                    std::span<const AttributedGraph> collection);

} // namespace gmg
