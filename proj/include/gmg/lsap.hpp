#pragma once

#include <cstddef>
#include <vector>

namespace gmg {

// Marks a forbidden cell in a cost matrix. Kept finite so arithmetic stays total.
inline constexpr double kForbidden = 1e15;

inline bool is_forbidden(double cost) { return cost >= kForbidden; }

/// Dense square cost matrix, row-major.
class CostMatrix {
public:
    CostMatrix() = default;
    explicit CostMatrix(std::size_t size, double fill = 0.0) : size_(size), data_(size * size, fill) {}

    std::size_t size() const { return size_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

private:
    std::size_t size_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    std::vector<std::size_t> row_to_col;
    double objective = 0.0; // sum of the selected entries in row order
};

/**
 * Minimum-cost perfect matching on a square matrix (Hungarian method with
 * shortest augmenting paths, O(k^3)). Forbidden cells are never used.
 *
 * Throws std::invalid_argument on NaN or infinite entries, and
 * std::runtime_error when no perfect matching avoids the forbidden cells.
 */
Assignment solve_lsap(const CostMatrix& costs);

/**
 * Augmented GED layout of size (n + n2):
 *
 *     [ substitution (n x n2) | removal diag (n x n)   ]
 *     [ insertion diag (n2 x n2) | zeros (n2 x n)     ]
 *
 * Off-diagonal cells of the removal and insertion blocks are forbidden.
 * `substitution` is row-major n x n2.
 */
CostMatrix augmented_ged_matrix(std::size_t n, std::size_t n2, const std::vector<double>& substitution,
                                const std::vector<double>& removal, const std::vector<double>& insertion);

} // namespace gmg
