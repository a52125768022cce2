#include <doctest.h>

#include <stdexcept>

#include <random>

#include "gmg/lsap.hpp"
#include "oracles.hpp"

using namespace gmg;

namespace {

CostMatrix to_matrix(const std::vector<std::vector<double>>& rows)
{
    CostMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows.size(); ++c)
            m(r, c) = rows[r][c];
    return m;
}

} // namespace

TEST_CASE("small assignments")
{
    Assignment a = solve_lsap(to_matrix({{1, 2}, {2, 1}}));
    CHECK(a.row_to_col == std::vector<std::size_t>{0, 1});
    CHECK(a.objective == 2.0);
    CHECK(solve_lsap(to_matrix({{5}})).objective == 5.0);
    CHECK(solve_lsap(CostMatrix(0)).row_to_col.empty());
}

TEST_CASE("random matrices match exhaustive permutations")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> cost(0.0, 10.0);
    std::uniform_int_distribution<int> small(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = 1 + static_cast<std::size_t>(trial % 6);
        std::vector<std::vector<double>> rows(k, std::vector<double>(k));
        for (auto& row : rows)
            for (double& x : row)
                x = trial % 2 ? cost(rng) : small(rng);
        Assignment a = solve_lsap(to_matrix(rows));
        double sum = 0.0;
        std::vector<char> used(k, 0);
        for (std::size_t r = 0; r < k; ++r) {
            REQUIRE_FALSE(used[a.row_to_col[r]]);
            used[a.row_to_col[r]] = 1;
            sum += rows[r][a.row_to_col[r]];
        }
        CHECK(sum == a.objective);
        CHECK(a.objective == doctest::Approx(oracle::brute_force_lsap(rows)).epsilon(1e-12));
    }
}

TEST_CASE("forbidden cells are avoided")
{
    CostMatrix m = to_matrix({{0, kForbidden}, {kForbidden, 0}});
    Assignment a = solve_lsap(m);
    CHECK(a.row_to_col == std::vector<std::size_t>{0, 1});
    CHECK(a.objective == 0.0);
    CHECK_THROWS_AS(solve_lsap(to_matrix({{kForbidden, kForbidden}, {0, 0}})), std::runtime_error);
    CHECK_THROWS_AS(solve_lsap(to_matrix({{std::nan(""), 0}, {0, 0}})), std::invalid_argument);
}

TEST_CASE("augmented layout")
{
    CostMatrix m = augmented_ged_matrix(2, 1, {1.0, 2.0}, {3.0, 4.0}, {5.0});
    REQUIRE(m.size() == 3);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 3.0);
    CHECK(is_forbidden(m(0, 2)));
    CHECK(m(1, 2) == 4.0);
    CHECK(m(2, 0) == 5.0);
    CHECK(m(2, 1) == 0.0);
    Assignment a = solve_lsap(m);
    CHECK(a.objective == 1.0 + 4.0 + 0.0);
}
