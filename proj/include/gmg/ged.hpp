#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gmg/edit_cost.hpp"
#include "gmg/graph.hpp"
#include "gmg/transformation.hpp"

namespace gmg {

enum class GedMethod { Exact, Bipartite, Ipfp, MultistartBipartite, MultistartIpfp };

// CLI names: exact, bipartite, ipfp, mbipartite, mipfp.
std::string_view to_string(GedMethod method);
std::optional<GedMethod> parse_ged_method(std::string_view name);

struct GedSolverConfig {
    GedMethod method = GedMethod::MultistartIpfp;
    std::size_t multistart_count = 40;
    std::size_t ipfp_max_iters = 50;
    double ipfp_tol = 1e-6;
    std::uint64_t rng_seed = 0;
    std::size_t exact_order_cap = 8;

    friend bool operator==(const GedSolverConfig&, const GedSolverConfig&) = default;
};

struct GedResult {
    Transformation transformation;
    double cost = 0.0; // always transformation_cost of `transformation`
    bool is_exact = false;
};

// Throws ConfigError when max(n, n2) exceeds the cap.
GedResult ged_exact(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                    std::size_t order_cap = 8);

/**
 * Bipartite upper bound. Substitution entries combine the vertex substitution
 * cost with half the optimal assignment cost between the incident edges of
 * the two vertices; the returned cost is the true cost of the induced
 * transformation.
 */
GedResult ged_bipartite(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2);

/**
 * Integer projected fixed point refinement of `init` on the quadratic
 * edit-cost objective over the augmented assignment polytope. The result is
 * the best discrete iterate seen, so its cost never exceeds the cost of init.
 */
GedResult ged_ipfp(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                   const Transformation& init, const GedSolverConfig& config);

/**
 * Multistart wrapper. Start 0 is the bipartite solution, starts
 * 1..multistart_count-1 are seeded random transformations (for
 * MultistartIpfp) or bipartite solves on randomly permuted vertex orders (for
 * MultistartBipartite). The minimum cost wins; ties go to the
 * lexicographically smallest forward map.
 */
GedResult ged_multistart(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                         const GedSolverConfig& config);

// Dispatch on config.method.
GedResult compute_ged(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                      const GedSolverConfig& config);

// Random transformation from n to n2 vertices: a shuffled augmented assignment.
Transformation random_transformation(std::size_t n, std::size_t n2, std::uint64_t seed);

// Deterministic seed derivation for sub-problems.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace gmg
