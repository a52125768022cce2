#include "gmg/edit_cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gmg {

namespace {

void check_constant(double value, const char* name)
{
    if (!std::isfinite(value) || value < 0.0)
        throw std::invalid_argument(std::string("cost model: ") + name + " must be finite and non-negative");
}

double label_delta(const LabelDelta& m, const Attribute& a, const Attribute& b)
{
    if (!a.is_label() || !b.is_label())
        throw std::invalid_argument("cost model: label substitution applied to a vector attribute");
    return a.as_label() == b.as_label() ? 0.0 : m.cost;
}

double squared_distance(const Attribute& a, const Attribute& b)
{
    if (!a.is_vector() || !b.is_vector())
        throw std::invalid_argument("cost model: euclidean substitution applied to a label attribute");
    auto x = a.as_vector();
    auto y = b.as_vector();
    if (x.size() != y.size())
        throw std::invalid_argument("cost model: vector dimensions differ");
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double d = x[k] - y[k];
        s += d * d;
    }
    return s;
}

} // namespace

CostModel::CostModel(CostConstants constants, VertexSubstitution vertex_subst, EdgeSubstitution edge_subst)
    : constants_(constants), vertex_subst_(vertex_subst), edge_subst_(edge_subst)
{
    check_constant(constants_.vertex_removal, "c_vr");
    check_constant(constants_.vertex_insertion, "c_vi");
    check_constant(constants_.edge_removal, "c_er");
    check_constant(constants_.edge_insertion, "c_ei");
    if (const auto* vs = std::get_if<LabelDelta>(&vertex_subst_)) {
        if (!std::isfinite(vs->cost) || vs->cost <= 0.0)
            throw std::invalid_argument("cost model: c_vs must be positive");
        if (vs->cost > constants_.vertex_removal + constants_.vertex_insertion)
            throw std::invalid_argument("cost model: c_vs exceeds c_vr + c_vi");
    }
    if (const auto* es = std::get_if<LabelDelta>(&edge_subst_)) {
        if (!std::isfinite(es->cost) || es->cost <= 0.0)
            throw std::invalid_argument("cost model: c_es must be positive");
        if (es->cost > constants_.edge_removal + constants_.edge_insertion)
            throw std::invalid_argument("cost model: c_es exceeds c_er + c_ei");
    }
}

CostModel CostModel::labeled(double c_vs, double c_es, CostConstants constants)
{
    return CostModel(constants, LabelDelta{c_vs}, LabelDelta{c_es});
}

double CostModel::vertex_subst_cost(const Attribute& a, const Attribute& b) const
{
    if (const auto* m = std::get_if<LabelDelta>(&vertex_subst_))
        return label_delta(*m, a, b);
    return squared_distance(a, b);
}

double CostModel::edge_subst_cost(const Attribute& a, const Attribute& b) const
{
    if (const auto* m = std::get_if<LabelDelta>(&edge_subst_))
        return label_delta(*m, a, b);
    return 0.0;
}

bool CostModel::symmetric() const
{
    return constants_.vertex_removal == constants_.vertex_insertion &&
           constants_.edge_removal == constants_.edge_insertion;
}

double vertex_cost(const CostModel& model, const Transformation& t, std::span<const Attribute> phi,
                   std::span<const Attribute> phi2)
{
    if (phi.size() != t.source_order() || phi2.size() != t.target_order())
        throw std::invalid_argument("vertex_cost: attribute counts do not match the transformation");
    double cost = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (t.substitutes(i))
            cost += model.vertex_subst_cost(phi[i], phi2[t[i]]);
        else
            cost += model.vertex_removal();
    }
    for (std::size_t k = 0; k < phi2.size(); ++k)
        if (t.is_inserted(k))
            cost += model.vertex_insertion();
    return cost;
}

double edge_cost(const CostModel& model, const Transformation& t, const AttributedGraph& g,
                 const AttributedGraph& g2)
{
    check_orders(t, g, g2);
    double half = 0.0;
    for (std::size_t i = 0; i < g.order(); ++i) {
        for (std::size_t j = i + 1; j < g.order(); ++j) {
            bool mapped = t.substitutes(i) && t.substitutes(j);
            bool target_edge = mapped && g2.has_edge(t[i], t[j]);
            if (g.has_edge(i, j)) {
                if (target_edge)
                    half += model.edge_subst_cost(g.edge_attr(i, j), g2.edge_attr(t[i], t[j]));
                else
                    half += model.edge_removal();
            } else if (target_edge) {
                half += model.edge_insertion();
            }
        }
    }
    // Target edges with an inserted endpoint.
    for (std::size_t k = 0; k < g2.order(); ++k)
        for (std::size_t l = k + 1; l < g2.order(); ++l)
            if (g2.has_edge(k, l) && (t.is_inserted(k) || t.is_inserted(l)))
                half += model.edge_insertion();
    return 2.0 * half;
}

double transformation_cost(const CostModel& model, const Transformation& t, const AttributedGraph& g,
                           const AttributedGraph& g2)
{
    return vertex_cost(model, t, g.vertex_attrs(), g2.vertex_attrs()) + 0.5 * edge_cost(model, t, g, g2);
}

std::string metric_guard_warning(const CostModel& model, std::span<const Attribute> vertex_attrs)
{
    if (!std::holds_alternative<SquaredEuclidean>(model.vertex_subst()) || vertex_attrs.empty())
        return {};
    std::size_t dim = vertex_attrs.front().dimension();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (const Attribute& a : vertex_attrs) {
        if (!a.is_vector() || a.dimension() != dim)
            continue;
        auto x = a.as_vector();
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], x[k]);
            hi[k] = std::max(hi[k], x[k]);
        }
    }
    double diag = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
        diag += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    double bound = model.vertex_removal() + model.vertex_insertion();
    if (diag <= bound)
        return {};
    std::ostringstream msg;
    msg << "squared euclidean substitution may exceed c_vr + c_vi (" << bound
        << "): attribute bounding-box diagonal squared is " << diag;
    return msg.str();
}

} // namespace gmg
