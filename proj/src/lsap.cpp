#include "gmg/lsap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmg {

Assignment solve_lsap(const CostMatrix& costs)
{
    const std::size_t n = costs.size();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!std::isfinite(costs(r, c)))
                throw std::invalid_argument("lsap: non-finite cost entry");

    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; column 0 is the virtual root of each augmenting search.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c])
                    continue;
                double entry = costs(r0 - 1, c - 1);
                if (!is_forbidden(entry)) {
                    double cur = entry - u[r0] - v[c];
                    if (cur < minv[c]) {
                        minv[c] = cur;
                        way[c] = col0;
                    }
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            if (col1 == 0)
                throw std::runtime_error("lsap: no feasible assignment avoids forbidden cells");
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    Assignment result;
    result.row_to_col.assign(n, 0);
    for (std::size_t c = 1; c <= n; ++c)
        result.row_to_col[match[c] - 1] = c - 1;
    for (std::size_t r = 0; r < n; ++r) {
        double entry = costs(r, result.row_to_col[r]);
        if (is_forbidden(entry))
            throw std::runtime_error("lsap: forbidden cell in returned assignment");
        result.objective += entry;
    }
    return result;
}

CostMatrix augmented_ged_matrix(std::size_t n, std::size_t n2, const std::vector<double>& substitution,
                                const std::vector<double>& removal, const std::vector<double>& insertion)
{
    if (substitution.size() != n * n2 || removal.size() != n || insertion.size() != n2)
        throw std::invalid_argument("augmented_ged_matrix: block sizes do not match orders");
    CostMatrix m(n + n2, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n2; ++k)
            m(i, k) = substitution[i * n2 + k];
        for (std::size_t j = 0; j < n; ++j)
            m(i, n2 + j) = i == j ? removal[i] : kForbidden;
    }
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n2; ++l)
            m(n + k, l) = k == l ? insertion[k] : kForbidden;
    return m;
}

} // namespace gmg
