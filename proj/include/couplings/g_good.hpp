#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "couplings/errors.hpp"
#include "couplings/good_sets.hpp"
#include "couplings/group_action.hpp"
#include "couplings/linalg.hpp"

namespace couplings {

/// The quotient grid X1 x Y1 (rows = X-orbits, columns = Y-orbits). Every
/// product orbit is filed into exactly one cell; alpha(i,j) is the number
/// of product orbits in that cell, always >= 1.
struct OrbitGrid {
    int m1 = 0;
    int n1 = 0;
    int num_product_orbits = 0;                           // m12
    std::vector<std::vector<std::vector<int>>> cell_orbits;  // [i][j] -> ascending orbit ids
    std::vector<Cell> orbit_cell;                         // product orbit id -> its cell

    int alpha(int i, int j) const { return static_cast<int>(cell_orbits[i][j].size()); }
};

/// A G-invariant subset of X x Y, represented by the set of product-orbit
/// ids it is made of (sorted, duplicate-free). Invariance holds by
/// construction.
using GInvariantSubset = std::vector<int>;

inline OrbitGrid build_orbit_grid(const OrbitPartition& x_orbits, const OrbitPartition& y_orbits,
                                  const OrbitPartition& product_orbits, int y_size) {
    OrbitGrid grid;
    grid.m1 = x_orbits.num_orbits();
    grid.n1 = y_orbits.num_orbits();
    grid.num_product_orbits = product_orbits.num_orbits();
    grid.cell_orbits.assign(grid.m1, std::vector<std::vector<int>>(grid.n1));
    grid.orbit_cell.resize(grid.num_product_orbits);
    for (int o = 0; o < grid.num_product_orbits; ++o) {
        // Any representative projects onto the same pair of orbits.
        const int cell = product_orbits.orbits[o].front();
        const int i = x_orbits.orbit_of[cell / y_size];
        const int j = y_orbits.orbit_of[cell % y_size];
        grid.cell_orbits[i][j].push_back(o);
        grid.orbit_cell[o] = Cell{i, j};
    }
    return grid;
}

inline OrbitGrid build_orbit_grid(const ActionSpec& spec) {
    return build_orbit_grid(orbits_x(spec), orbits_y(spec), orbits_product(spec), spec.y_size);
}

/// phi maps a product orbit G(x,y) to the orbit-grid cell (G(x), G(y)).
inline Cell phi(const OrbitGrid& grid, int orbit_id) {
    if (orbit_id < 0 || orbit_id >= grid.num_product_orbits)
        throw ValidationError("unknown product orbit id " + std::to_string(orbit_id));
    return grid.orbit_cell[orbit_id];
}

namespace detail {

inline GridSubset phi_image(const OrbitGrid& grid, const GInvariantSubset& s) {
    std::vector<Cell> cells;
    cells.reserve(s.size());
    for (int o : s) cells.push_back(phi(grid, o));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return GridSubset{grid.m1, grid.n1, std::move(cells)};
}

}  // namespace detail

/// A G-invariant subset is G-good iff phi is one-to-one on its orbits and
/// the image cell set is good in the orbit grid.
inline bool is_ggood(const OrbitGrid& grid, const GInvariantSubset& s) {
    const GridSubset image = detail::phi_image(grid, s);
    if (image.size() != s.size()) return false;  // two orbits share a cell
    return is_good(image);
}

inline bool is_ggood(const ActionSpec& spec, const GInvariantSubset& s) {
    return is_ggood(build_orbit_grid(spec), s);
}

/// Sum over maximal good sets T of the orbit grid of the product of the
/// alphas over T, computed as a weighted spanning-tree count (Laplacian
/// minor determinant) so no enumeration is needed.
inline Int count_maximal_ggood(const OrbitGrid& grid) {
    const int m1 = grid.m1, n1 = grid.n1;
    const int dim = m1 + n1 - 1;  // drop the last column vertex
    std::vector<std::vector<Int>> lap(dim, std::vector<Int>(dim, Int(0)));
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < n1; ++j) {
            const Int w = grid.alpha(i, j);
            lap[i][i] += w;
            if (j < n1 - 1) {
                lap[m1 + j][m1 + j] += w;
                lap[i][m1 + j] -= w;
                lap[m1 + j][i] -= w;
            }
        }
    return det_bareiss(std::move(lap));
}

inline Int count_maximal_ggood(const ActionSpec& spec) {
    return count_maximal_ggood(build_orbit_grid(spec));
}

/// Emits every maximal G-good set: for each maximal good set T of the
/// orbit grid (canonical order) and each choice of one orbit per cell of T
/// (lexicographic over the per-cell choices), the chosen orbit ids, sorted.
/// Each emitted set has exactly m1+n1-1 orbits.
template <class Emit>
inline void enumerate_maximal_ggood(const OrbitGrid& grid, Emit&& emit,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
    const Int total = count_maximal_ggood(grid);
    if (total > Int(static_cast<unsigned long>(cap)))
        throw CapExceeded("enumeration of " + total.get_str() +
                          " maximal G-good sets exceeds cap " + std::to_string(cap));

    enumerate_maximal_good(grid.m1, grid.n1, [&](const GridSubset& tree) {
        const std::size_t k = tree.size();
        std::vector<std::size_t> choice(k, 0);
        while (true) {
            GInvariantSubset s;
            s.reserve(k);
            for (std::size_t t = 0; t < k; ++t)
                s.push_back(grid.cell_orbits[tree.cells[t].row][tree.cells[t].col][choice[t]]);
            std::sort(s.begin(), s.end());
            emit(s);
            // odometer over per-cell choices, last position fastest
            std::size_t pos = k;
            while (pos > 0) {
                --pos;
                const auto& options = grid.cell_orbits[tree.cells[pos].row][tree.cells[pos].col];
                if (++choice[pos] < options.size()) break;
                choice[pos] = 0;
                if (pos == 0) return;
            }
        }
    }, cap);
}

inline std::vector<GInvariantSubset> list_maximal_ggood(
    const OrbitGrid& grid, std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<GInvariantSubset> out;
    enumerate_maximal_ggood(grid, [&](const GInvariantSubset& s) { out.push_back(s); }, cap);
    return out;
}

// Test-surface oracle for G-goodness: every G-invariant rational function
// on the union of s's orbits splits as u(x)+v(y) with u, v invariant, i.e.
// the orbit-level incidence system (one row per orbit, one unknown per
// X-orbit and per Y-orbit) has rank |s|.
inline RatMatrix orbit_incidence_matrix(const OrbitGrid& grid, const GInvariantSubset& s) {
    RatMatrix a(s.size(), std::vector<Rat>(grid.m1 + grid.n1, Rat(0)));
    for (std::size_t r = 0; r < s.size(); ++r) {
        const Cell c = phi(grid, s[r]);
        a[r][c.row] = 1;
        a[r][grid.m1 + c.col] = 1;
    }
    return a;
}

}  // namespace couplings
