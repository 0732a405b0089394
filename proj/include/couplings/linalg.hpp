#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "couplings/rational.hpp"

namespace couplings {

// Dense exact-rational matrices, row major. Sizes here are tiny (the
// largest systems are (m1+n1) x (m1+n1-1)), so plain Gaussian elimination
// with first-nonzero pivoting is entirely adequate and fully deterministic.
using RatMatrix = std::vector<std::vector<Rat>>;

inline std::size_t rat_rank(RatMatrix a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            const Rat factor = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    std::vector<Rat> values;  // particular solution, free variables pinned to 0
};

// Solves a*x = b exactly.
inline LinearSolution solve_linear(RatMatrix a, std::vector<Rat> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    assert(b.size() == rows);

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        std::swap(b[rank], b[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rat factor = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[rank][c];
            b[r] -= factor * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    LinearSolution out;
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return out;  // 0 = nonzero: inconsistent
    out.consistent = true;
    out.unique = (rank == cols);
    out.values.assign(cols, Rat(0));
    for (std::size_t r = 0; r < rank; ++r) out.values[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return out;
}

inline std::size_t nullspace_dimension(const RatMatrix& a) {
    if (a.empty()) return 0;
    return a[0].size() - rat_rank(a);
}

// Fraction-free determinant (Bareiss). Used by the matrix-tree counters.
inline Int det_bareiss(std::vector<std::vector<Int>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace couplings
