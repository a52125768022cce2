#include "gmg/median.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "gmg/log.hpp"
#include "gmg/parallel.hpp"

namespace gmg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_nonempty(std::span<const AttributedGraph> collection)
{
    if (collection.empty())
        throw std::invalid_argument("median: empty collection");
}

// Most frequent label, smallest label on ties. `labels` must be non-empty.
Label majority(const std::vector<Label>& labels)
{
    std::map<Label, std::size_t> counts;
    for (Label l : labels)
        ++counts[l];
    Label best = counts.begin()->first;
    std::size_t best_count = 0;
    for (const auto& [label, count] : counts) {
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

std::size_t count_of(const std::vector<Label>& labels, Label x)
{
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), x));
}

} // namespace

SetMedianResult set_median(const CostModel& model, std::span<const AttributedGraph> collection,
                           const GedSolverConfig& solver)
{
    require_nonempty(collection);
    const std::size_t size = collection.size();
    SetMedianResult out;
    out.pairwise.assign(size, std::vector<GedResult>(size));

    parallel_for(size * size, [&](std::size_t cell) {
        std::size_t p = cell / size;
        std::size_t q = cell % size;
        if (p == q) {
            out.pairwise[p][q] = {Transformation::identity(collection[p].order()), 0.0, true};
            return;
        }
        GedSolverConfig local = solver;
        local.rng_seed = mix_seed(solver.rng_seed, cell);
        out.pairwise[p][q] = compute_ged(model, collection[p], collection[q], local);
    });

    double best = 0.0;
    for (std::size_t p = 0; p < size; ++p) {
        double row = 0.0;
        for (std::size_t q = 0; q < size; ++q)
            row += out.pairwise[p][q].cost;
        if (p == 0 || row < best) {
            best = row;
            out.median_index = p;
        }
    }
    out.sod = best;
    for (std::size_t q = 0; q < size; ++q)
        out.transformations.push_back(out.pairwise[out.median_index][q].transformation);
    return out;
}

SubstitutionSets collect_substitution_sets(const MedianState& state, std::span<const AttributedGraph> collection)
{
    const std::size_t order = state.median.order();
    if (state.transformations.size() != collection.size())
        throw std::invalid_argument("collect_substitution_sets: one transformation per graph required");
    SubstitutionSets sets(order, collection.size());
    for (std::size_t p = 0; p < collection.size(); ++p) {
        const Transformation& t = state.transformations[p];
        check_orders(t, state.median, collection[p]);
        for (std::size_t i = 0; i < order; ++i) {
            if (!t.substitutes(i))
                continue;
            sets.vertex_set(i).push_back({p, t[i]});
            for (std::size_t j = i + 1; j < order; ++j)
                if (t.substitutes(j) && collection[p].has_edge(t[i], t[j]))
                    sets.edge_set(i, j).push_back({p, t[i], t[j]});
        }
    }
    return sets;
}

std::vector<Attribute> update_vertex_labels(const SubstitutionSets& sets, std::span<const AttributedGraph> collection,
                                            std::span<const Attribute> current)
{
    std::vector<Attribute> out(current.begin(), current.end());
    for (std::size_t i = 0; i < sets.median_order(); ++i) {
        const auto& s = sets.vertex_set(i);
        if (s.empty())
            continue;
        std::vector<Label> labels;
        labels.reserve(s.size());
        for (const auto& [p, k] : s)
            labels.push_back(collection[p].vertex_attr(k).as_label());
        out[i] = Attribute::label(majority(labels));
    }
    return out;
}

std::vector<Attribute> update_vertex_vectors(const SubstitutionSets& sets,
                                             std::span<const AttributedGraph> collection,
                                             std::span<const Attribute> current)
{
    std::vector<Attribute> out(current.begin(), current.end());
    for (std::size_t i = 0; i < sets.median_order(); ++i) {
        const auto& s = sets.vertex_set(i);
        if (s.empty())
            continue;
        std::vector<double> mean(collection[s.front().graph].vertex_attr(s.front().vertex).dimension(), 0.0);
        for (const auto& [p, k] : s) {
            auto x = collection[p].vertex_attr(k).as_vector();
            for (std::size_t d = 0; d < mean.size(); ++d)
                mean[d] += x[d];
        }
        for (double& m : mean)
            m /= static_cast<double>(s.size());
        out[i] = Attribute::vector(std::move(mean));
    }
    return out;
}

EdgeUpdate update_edges_labeled(const SubstitutionSets& sets, std::span<const AttributedGraph> collection,
                                const CostModel& model)
{
    const auto* es = std::get_if<LabelDelta>(&model.edge_subst());
    if (!es)
        throw std::invalid_argument("update_edges_labeled: cost model has unlabeled edges");
    const std::size_t n = sets.median_order();
    const double graphs = static_cast<double>(sets.collection_size());
    EdgeUpdate out{n, std::vector<std::uint8_t>(n * n, 0), std::vector<Attribute>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& s = sets.edge_set(i, j);
            if (s.empty())
                continue;
            std::vector<Label> labels;
            labels.reserve(s.size());
            for (const auto& e : s)
                labels.push_back(collection[e.graph].edge_attr(e.u, e.v).as_label());
            Label label = majority(labels);
            double hits = static_cast<double>(count_of(labels, label));
            double substituted = static_cast<double>(s.size());
            // h > |G| c_er / c_es + |S| (1 - (c_er + c_ei) / c_es), multiplied through by c_es > 0.
            double lhs = es->cost * hits;
            double rhs = graphs * model.edge_removal() +
                         substituted * (es->cost - model.edge_removal() - model.edge_insertion());
            if (lhs > rhs) {
                out.adjacency[i * n + j] = out.adjacency[j * n + i] = 1;
                out.attrs[i * n + j] = out.attrs[j * n + i] = Attribute::label(label);
            }
        }
    }
    return out;
}

EdgeUpdate update_edges_unlabeled(const SubstitutionSets& sets, const CostModel& model)
{
    const std::size_t n = sets.median_order();
    const double graphs = static_cast<double>(sets.collection_size());
    EdgeUpdate out{n, std::vector<std::uint8_t>(n * n, 0), std::vector<Attribute>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double substituted = static_cast<double>(sets.edge_set(i, j).size());
            if (substituted * (model.edge_removal() + model.edge_insertion()) > graphs * model.edge_removal()) {
                out.adjacency[i * n + j] = out.adjacency[j * n + i] = 1;
                out.attrs[i * n + j] = out.attrs[j * n + i] = Attribute::label(1);
            }
        }
    }
    return out;
}

AttributedGraph update_median_graph(const MedianState& state, std::span<const AttributedGraph> collection,
                                    const CostModel& model)
{
    SubstitutionSets sets = collect_substitution_sets(state, collection);
    const auto& current = state.median.vertex_attrs();
    std::vector<Attribute> vertices = model.vertex_labels() ? update_vertex_labels(sets, collection, current)
                                                            : update_vertex_vectors(sets, collection, current);
    EdgeUpdate edges = model.edge_labels() ? update_edges_labeled(sets, collection, model)
                                           : update_edges_unlabeled(sets, model);
    std::vector<Edge> edge_list;
    for (std::size_t i = 0; i < edges.order; ++i)
        for (std::size_t j = i + 1; j < edges.order; ++j)
            if (edges.adjacency[i * edges.order + j])
                edge_list.push_back({i, j, edges.attrs[i * edges.order + j]});
    return AttributedGraph::build(edges.order, std::move(vertices), edge_list, state.median.id());
}

TransformationUpdate update_transformations(const MedianState& state, std::span<const AttributedGraph> collection,
                                            const CostModel& model, const GedSolverConfig& solver)
{
    const std::size_t size = collection.size();
    TransformationUpdate out;
    out.transformations.resize(size);
    out.costs.resize(size);
    std::vector<char> changed(size, 0);

    parallel_for(size, [&](std::size_t p) {
        const Transformation& previous = state.transformations[p];
        double previous_cost = transformation_cost(model, previous, state.median, collection[p]);
        GedSolverConfig local = solver;
        local.rng_seed = mix_seed(solver.rng_seed, p);
        GedResult fresh = compute_ged(model, state.median, collection[p], local);
        if (fresh.cost <= previous_cost) {
            changed[p] = fresh.transformation != previous;
            out.transformations[p] = std::move(fresh.transformation);
            out.costs[p] = fresh.cost;
        } else {
            out.transformations[p] = previous;
            out.costs[p] = previous_cost;
        }
    });

    for (std::size_t p = 0; p < size; ++p) {
        out.sod_upper += out.costs[p];
        out.changed += changed[p] ? 1 : 0;
    }
    return out;
}

double sum_of_costs(const CostModel& model, const AttributedGraph& median, std::span<const Transformation> ts,
                    std::span<const AttributedGraph> collection)
{
    double s = 0.0;
    for (std::size_t p = 0; p < collection.size(); ++p)
        s += transformation_cost(model, ts[p], median, collection[p]);
    return s;
}

MedianResult compute_median(const CostModel& model, std::span<const AttributedGraph> collection,
                            const DescentConfig& config)
{
    require_nonempty(collection);
    MedianResult result;

    auto start = Clock::now();
    SetMedianResult sm = set_median(model, collection, config.phase1);
    result.phase1_seconds = seconds_since(start);
    result.set_median_index = sm.median_index;
    result.set_median_sod = sm.sod;
    result.sod_trace.push_back(sm.sod);

    MedianState state{collection[sm.median_index].with_id("median"), std::move(sm.transformations), sm.sod, 0};
    log().info("set-median index={} sod={} seconds={}", sm.median_index, sm.sod, result.phase1_seconds);

    start = Clock::now();
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        AttributedGraph updated = update_median_graph(state, collection, model);
        bool median_stable = updated.same_content(state.median, 1e-9);
        state.median = std::move(updated);

        TransformationUpdate tu = update_transformations(state, collection, model, config.phase2);
        state.transformations = std::move(tu.transformations);
        state.sod_upper = tu.sod_upper;
        state.iteration = iter;

        IterationRecord record{iter, tu.sod_upper, tu.changed, seconds_since(start)};
        result.iterations.push_back(record);
        result.sod_trace.push_back(tu.sod_upper);
        log().info("descent iteration={} sod_upper={} changed={} elapsed={}", record.iteration, record.sod_upper,
                   record.changed_transformations, record.elapsed_seconds);

        if (median_stable && tu.changed == 0) {
            result.converged = true;
            break;
        }
    }
    result.phase2_seconds = seconds_since(start);
    result.median = std::move(state.median);
    result.transformations = std::move(state.transformations);
    return result;
}

} // namespace gmg
