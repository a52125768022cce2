#include "gmg/ged.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gmg/errors.hpp"
#include "gmg/lsap.hpp"
#include "gmg/parallel.hpp"

namespace gmg {

namespace {

constexpr double kEps = 1e-9;

GedResult make_result(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                      Transformation t, bool exact)
{
    double cost = transformation_cost(model, t, g, g2);
    return {std::move(t), cost, exact};
}

// Lower cost wins, then the lexicographically smaller forward map.
bool better(const GedResult& a, const GedResult& b)
{
    if (a.cost < b.cost - kEps)
        return true;
    if (b.cost < a.cost - kEps)
        return false;
    return a.transformation.forward() < b.transformation.forward();
}

// ---------------------------------------------------------------------------
// Exact search: depth-first over source vertices, targets tried in increasing
// order with removal last, pruned by the accumulated cost of fixed operations.

class ExactSearch {
public:
    ExactSearch(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2, double upper_bound)
        : model_(model), g_(g), g2_(g2), n_(g.order()), n2_(g2.order()), forward_(n_, n2_), used_(n2_, 0),
          best_cost_(upper_bound)
    {
    }

    std::vector<std::size_t> run()
    {
        descend(0, 0.0, 0);
        return best_forward_;
    }

private:
    double remaining_bound(std::size_t assigned, std::size_t used_targets) const
    {
        std::size_t left = n_ - assigned;
        std::size_t free = n2_ - used_targets;
        if (left > free)
            return static_cast<double>(left - free) * model_.vertex_removal();
        return static_cast<double>(free - left) * model_.vertex_insertion();
    }

    bool prune(double lower) const
    {
        return found_ ? lower >= best_cost_ - kEps : lower > best_cost_ + kEps;
    }

    double completion() const
    {
        double c = 0.0;
        for (std::size_t k = 0; k < n2_; ++k) {
            if (used_[k])
                continue;
            c += model_.vertex_insertion();
            for (std::size_t l = 0; l < n2_; ++l)
                if (g2_.has_edge(k, l) && (l > k || used_[l]))
                    c += model_.edge_insertion();
        }
        return c;
    }

    // Edge operations between vertex i (mapped to k, or removed when k == n2) and earlier vertices.
    double edge_delta(std::size_t i, std::size_t k) const
    {
        double c = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            std::size_t l = forward_[j];
            bool target_edge = k < n2_ && l < n2_ && g2_.has_edge(k, l);
            if (g_.has_edge(i, j))
                c += target_edge ? model_.edge_subst_cost(g_.edge_attr(i, j), g2_.edge_attr(k, l))
                                 : model_.edge_removal();
            else if (target_edge)
                c += model_.edge_insertion();
        }
        return c;
    }

    void descend(std::size_t i, double partial, std::size_t used_targets)
    {
        if (i == n_) {
            double total = partial + completion();
            bool accept = found_ ? total < best_cost_ - kEps : total <= best_cost_ + kEps;
            if (accept) {
                best_cost_ = total;
                best_forward_ = forward_;
                found_ = true;
            }
            return;
        }
        for (std::size_t k = 0; k < n2_; ++k) {
            if (used_[k])
                continue;
            double next = partial + model_.vertex_subst_cost(g_.vertex_attr(i), g2_.vertex_attr(k)) +
                          edge_delta(i, k);
            if (prune(next + remaining_bound(i + 1, used_targets + 1)))
                continue;
            forward_[i] = k;
            used_[k] = 1;
            descend(i + 1, next, used_targets + 1);
            used_[k] = 0;
            forward_[i] = n2_;
        }
        double next = partial + model_.vertex_removal() + edge_delta(i, n2_);
        if (prune(next + remaining_bound(i + 1, used_targets)))
            return;
        forward_[i] = n2_;
        descend(i + 1, next, used_targets);
    }

    const CostModel& model_;
    const AttributedGraph& g_;
    const AttributedGraph& g2_;
    std::size_t n_;
    std::size_t n2_;
    std::vector<std::size_t> forward_;
    std::vector<char> used_;
    std::vector<std::size_t> best_forward_;
    double best_cost_;
    bool found_ = false;
};

// ---------------------------------------------------------------------------
// Bipartite.

double local_edge_cost(const CostModel& model, const AttributedGraph& g, std::size_t i, const AttributedGraph& g2,
                       std::size_t k)
{
    auto ni = g.neighbors(i);
    auto nk = g2.neighbors(k);
    if (ni.empty() && nk.empty())
        return 0.0;
    std::vector<double> subst(ni.size() * nk.size());
    for (std::size_t a = 0; a < ni.size(); ++a)
        for (std::size_t b = 0; b < nk.size(); ++b)
            subst[a * nk.size() + b] = model.edge_subst_cost(g.edge_attr(i, ni[a]), g2.edge_attr(k, nk[b]));
    std::vector<double> removal(ni.size(), model.edge_removal());
    std::vector<double> insertion(nk.size(), model.edge_insertion());
    return solve_lsap(augmented_ged_matrix(ni.size(), nk.size(), subst, removal, insertion)).objective;
}

CostMatrix bipartite_matrix(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2)
{
    std::size_t n = g.order();
    std::size_t n2 = g2.order();
    std::vector<double> subst(n * n2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n2; ++k)
            subst[i * n2 + k] = model.vertex_subst_cost(g.vertex_attr(i), g2.vertex_attr(k)) +
                                0.5 * local_edge_cost(model, g, i, g2, k);
    std::vector<double> removal(n);
    for (std::size_t i = 0; i < n; ++i)
        removal[i] = model.vertex_removal() + 0.5 * static_cast<double>(g.degree(i)) * model.edge_removal();
    std::vector<double> insertion(n2);
    for (std::size_t k = 0; k < n2; ++k)
        insertion[k] = model.vertex_insertion() + 0.5 * static_cast<double>(g2.degree(k)) * model.edge_insertion();
    return augmented_ged_matrix(n, n2, subst, removal, insertion);
}

Transformation from_assignment(const std::vector<std::size_t>& row_to_col, std::size_t n, std::size_t n2)
{
    std::vector<std::size_t> forward(n);
    for (std::size_t i = 0; i < n; ++i)
        forward[i] = std::min(row_to_col[i], n2);
    return Transformation::from_forward(std::move(forward), n, n2);
}

// Full permutation of the augmented (n + n2) layout realizing t.
std::vector<std::size_t> to_assignment(const Transformation& t)
{
    std::size_t n = t.source_order();
    std::size_t n2 = t.target_order();
    std::vector<std::size_t> row_to_col(n + n2);
    std::vector<std::size_t> free_eps_cols;
    for (std::size_t i = 0; i < n; ++i) {
        if (t.substitutes(i)) {
            row_to_col[i] = t[i];
            free_eps_cols.push_back(n2 + i);
        } else {
            row_to_col[i] = n2 + i;
        }
    }
    std::size_t next = 0;
    for (std::size_t k = 0; k < n2; ++k)
        row_to_col[n + k] = t.is_inserted(k) ? k : free_eps_cols[next++];
    return row_to_col;
}

// ---------------------------------------------------------------------------
// IPFP on the augmented assignment polytope. Rows [0, n) are source vertices,
// rows [n, n + n2) insertion slots; columns [0, n2) are target vertices,
// columns [n2, n2 + n) removal slots. Over doubly stochastic X the cost is
//   f(X) = <C, X> + 0.5 <X, W X> + c_er |E| + c_ei |E2|
// where W couples (i -> k) with (j -> l) for i~j in g and k~l in g2 with
// weight c_efs - c_er - c_ei.

class IpfpProblem {
public:
    IpfpProblem(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2)
        : model_(model), g_(g), g2_(g2), n_(g.order()), n2_(g2.order()), size_(n_ + n2_), linear_(size_, 0.0)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = 0; k < n2_; ++k)
                linear_(i, k) = model.vertex_subst_cost(g.vertex_attr(i), g2.vertex_attr(k));
            for (std::size_t j = 0; j < n_; ++j)
                linear_(i, n2_ + j) = i == j ? model.vertex_removal() : kForbidden;
        }
        for (std::size_t k = 0; k < n2_; ++k)
            for (std::size_t l = 0; l < n2_; ++l)
                linear_(n_ + k, l) = k == l ? model.vertex_insertion() : kForbidden;
        for (std::size_t i = 0; i < n_; ++i)
            neighbors_.push_back(g.neighbors(i));
        for (std::size_t k = 0; k < n2_; ++k)
            neighbors2_.push_back(g2.neighbors(k));
    }

    std::size_t size() const { return size_; }
    const CostMatrix& linear() const { return linear_; }

    CostMatrix quadratic_product(const std::vector<double>& x) const
    {
        CostMatrix out(size_, 0.0);
        const double offset = model_.edge_removal() + model_.edge_insertion();
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = 0; k < n2_; ++k) {
                double s = 0.0;
                for (std::size_t j : neighbors_[i])
                    for (std::size_t l : neighbors2_[k])
                        s += (model_.edge_subst_cost(g_.edge_attr(i, j), g2_.edge_attr(k, l)) - offset) *
                             x[j * size_ + l];
                out(i, k) = s;
            }
        }
        return out;
    }

    double dot(const CostMatrix& m, const std::vector<double>& x, bool skip_forbidden) const
    {
        double s = 0.0;
        for (std::size_t r = 0; r < size_; ++r)
            for (std::size_t c = 0; c < size_; ++c) {
                double v = m(r, c);
                if (skip_forbidden && is_forbidden(v))
                    continue;
                s += v * x[r * size_ + c];
            }
        return s;
    }

    double objective(const std::vector<double>& x) const
    {
        double constant = model_.edge_removal() * static_cast<double>(g_.edge_count()) +
                          model_.edge_insertion() * static_cast<double>(g2_.edge_count());
        return dot(linear_, x, true) + 0.5 * dot(quadratic_product(x), x, false) + constant;
    }

    std::vector<double> indicator(const std::vector<std::size_t>& row_to_col) const
    {
        std::vector<double> x(size_ * size_, 0.0);
        for (std::size_t r = 0; r < size_; ++r)
            x[r * size_ + row_to_col[r]] = 1.0;
        return x;
    }

    Transformation to_transformation(const std::vector<std::size_t>& row_to_col) const
    {
        return from_assignment(row_to_col, n_, n2_);
    }

private:
    const CostModel& model_;
    const AttributedGraph& g_;
    const AttributedGraph& g2_;
    std::size_t n_;
    std::size_t n2_;
    std::size_t size_;
    CostMatrix linear_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::vector<std::vector<std::size_t>> neighbors2_;
};

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

GedResult multistart_ipfp(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                          const GedSolverConfig& config)
{
    std::size_t starts = std::max<std::size_t>(1, config.multistart_count);
    std::vector<Transformation> inits(starts);
    inits[0] = ged_bipartite(model, g, g2).transformation;
    for (std::size_t s = 1; s < starts; ++s)
        inits[s] = random_transformation(g.order(), g2.order(), mix_seed(config.rng_seed, s));

    std::vector<GedResult> results(starts);
    parallel_for(starts, [&](std::size_t s) { results[s] = ged_ipfp(model, g, g2, inits[s], config); });
    return *std::min_element(results.begin(), results.end(), better);
}

GedResult multistart_bipartite(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                               const GedSolverConfig& config)
{
    std::size_t starts = std::max<std::size_t>(1, config.multistart_count);
    CostMatrix base = bipartite_matrix(model, g, g2);
    std::size_t size = base.size();

    std::vector<GedResult> results(starts);
    parallel_for(starts, [&](std::size_t s) {
        std::vector<std::size_t> rows(size), cols(size);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::iota(cols.begin(), cols.end(), std::size_t{0});
        if (s > 0) {
            std::mt19937_64 rng(mix_seed(config.rng_seed, s));
            std::shuffle(rows.begin(), rows.end(), rng);
            std::shuffle(cols.begin(), cols.end(), rng);
        }
        CostMatrix permuted(size);
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c)
                permuted(r, c) = base(rows[r], cols[c]);
        Assignment a = solve_lsap(permuted);
        std::vector<std::size_t> row_to_col(size);
        for (std::size_t r = 0; r < size; ++r)
            row_to_col[rows[r]] = cols[a.row_to_col[r]];
        results[s] = make_result(model, g, g2, from_assignment(row_to_col, g.order(), g2.order()), false);
    });
    return *std::min_element(results.begin(), results.end(), better);
}

} // namespace

std::string_view to_string(GedMethod method)
{
    switch (method) {
    case GedMethod::Exact: return "exact";
    case GedMethod::Bipartite: return "bipartite";
    case GedMethod::Ipfp: return "ipfp";
    case GedMethod::MultistartBipartite: return "mbipartite";
    case GedMethod::MultistartIpfp: return "mipfp";
    }
    return "unknown";
}

std::optional<GedMethod> parse_ged_method(std::string_view name)
{
    for (GedMethod m : {GedMethod::Exact, GedMethod::Bipartite, GedMethod::Ipfp, GedMethod::MultistartBipartite,
                        GedMethod::MultistartIpfp})
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(seed ^ splitmix64(stream));
}

Transformation random_transformation(std::size_t n, std::size_t n2, std::uint64_t seed)
{
    std::vector<std::size_t> slots(n2 + n, n2);
    std::iota(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(n2), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(slots.begin(), slots.end(), rng);
    slots.resize(n);
    return Transformation::from_forward(std::move(slots), n, n2);
}

GedResult ged_exact(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                    std::size_t order_cap)
{
    if (std::max(g.order(), g2.order()) > order_cap)
        throw ConfigError("exact GED limited to graphs of order <= " + std::to_string(order_cap) + ", got " +
                          std::to_string(g.order()) + " and " + std::to_string(g2.order()));
    GedResult bound = ged_bipartite(model, g, g2);
    ExactSearch search(model, g, g2, bound.cost);
    auto forward = search.run();
    return make_result(model, g, g2, Transformation::from_forward(std::move(forward), g.order(), g2.order()), true);
}

GedResult ged_bipartite(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2)
{
    Assignment a = solve_lsap(bipartite_matrix(model, g, g2));
    return make_result(model, g, g2, from_assignment(a.row_to_col, g.order(), g2.order()), false);
}

GedResult ged_ipfp(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                   const Transformation& init, const GedSolverConfig& config)
{
    check_orders(init, g, g2);
    GedResult best = make_result(model, g, g2, init, false);
    IpfpProblem problem(model, g, g2);
    const std::size_t size = problem.size();
    if (size == 0)
        return best;

    auto consider = [&](const std::vector<std::size_t>& row_to_col) {
        GedResult candidate = make_result(model, g, g2, problem.to_transformation(row_to_col), false);
        if (better(candidate, best))
            best = std::move(candidate);
    };

    std::vector<double> x = problem.indicator(to_assignment(init));
    for (std::size_t iter = 0; iter < config.ipfp_max_iters; ++iter) {
        CostMatrix wx = problem.quadratic_product(x);
        CostMatrix gradient = problem.linear();
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c)
                if (!is_forbidden(gradient(r, c)))
                    gradient(r, c) += wx(r, c);

        Assignment direction = solve_lsap(gradient);
        consider(direction.row_to_col);

        std::vector<double> b = problem.indicator(direction.row_to_col);
        std::vector<double> d(x.size());
        for (std::size_t e = 0; e < x.size(); ++e)
            d[e] = b[e] - x[e];

        double slope = problem.dot(gradient, d, true);
        double scale = std::max(1.0, std::abs(problem.objective(x)));
        if (slope >= -config.ipfp_tol * scale)
            break;
        double curvature = problem.dot(problem.quadratic_product(d), d, false);
        double step = 1.0;
        if (curvature > 0.0)
            step = std::min(1.0, -slope / curvature);
        for (std::size_t e = 0; e < x.size(); ++e)
            x[e] += step * d[e];
    }

    // Project the relaxed solution back onto an assignment.
    CostMatrix projection(size, 0.0);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            projection(r, c) = is_forbidden(problem.linear()(r, c)) ? kForbidden : -x[r * size + c];
    consider(solve_lsap(projection).row_to_col);
    return best;
}

GedResult ged_multistart(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                         const GedSolverConfig& config)
{
    if (config.method == GedMethod::MultistartBipartite || config.method == GedMethod::Bipartite)
        return multistart_bipartite(model, g, g2, config);
    return multistart_ipfp(model, g, g2, config);
}

GedResult compute_ged(const CostModel& model, const AttributedGraph& g, const AttributedGraph& g2,
                      const GedSolverConfig& config)
{
    switch (config.method) {
    case GedMethod::Exact: return ged_exact(model, g, g2, config.exact_order_cap);
    case GedMethod::Bipartite: return ged_bipartite(model, g, g2);
    case GedMethod::Ipfp: return ged_ipfp(model, g, g2, ged_bipartite(model, g, g2).transformation, config);
    case GedMethod::MultistartBipartite:
    case GedMethod::MultistartIpfp: return ged_multistart(model, g, g2, config);
    }
    return ged_bipartite(model, g, g2);
}

} // namespace gmg
