#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "couplings/errors.hpp"
#include "couplings/linalg.hpp"
#include "couplings/rational.hpp"

namespace couplings {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

/// A subset of an m x n grid, cells kept duplicate-free and sorted row major.
struct GridSubset {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cells;

    static GridSubset of(int rows, int cols, std::vector<Cell> cells) {
        if (rows <= 0 || cols <= 0) throw ValidationError("grid dimensions must be positive");
        std::sort(cells.begin(), cells.end());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            if (c.row < 0 || c.row >= rows || c.col < 0 || c.col >= cols)
                throw ValidationError("cell out of range: (" + std::to_string(c.row) + "," +
                                      std::to_string(c.col) + ")");
            if (i > 0 && cells[i - 1] == c)
                throw ValidationError("duplicate cell: (" + std::to_string(c.row) + "," +
                                      std::to_string(c.col) + ")");
        }
        return GridSubset{rows, cols, std::move(cells)};
    }

    std::size_t size() const { return cells.size(); }
};

/// A closed alternating row/column walk through cells of S, first cell
/// repeated at the end. Its existence is exactly non-goodness.
struct LoopWitness {
    std::vector<Cell> cells;
};

struct NotGoodError : ValidationError {
    LoopWitness witness;

    explicit NotGoodError(LoopWitness w)
        : ValidationError("not a good set"), witness(std::move(w)) {}
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

namespace detail {

// The incidence graph of a grid subset: one vertex per row and per column,
// one edge per cell. Loops in S correspond to cycles here.
struct IncidenceGraph {
    int num_vertices = 0;
    // adjacency: vertex -> list of (neighbor, cell index)
    std::vector<std::vector<std::pair<int, int>>> adj;

    explicit IncidenceGraph(const GridSubset& s) {
        num_vertices = s.rows + s.cols;
        adj.resize(num_vertices);
        for (std::size_t e = 0; e < s.cells.size(); ++e) {
            const int u = s.cells[e].row;
            const int v = s.rows + s.cells[e].col;
            adj[u].emplace_back(v, static_cast<int>(e));
            adj[v].emplace_back(u, static_cast<int>(e));
        }
    }
};

struct RollbackUnionFind {
    std::vector<int> parent, size;
    std::vector<int> trail;

    explicit RollbackUnionFind(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int v) const {
        while (parent[v] != v) v = parent[v];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        trail.push_back(b);
        return true;
    }
    void rollback() {
        const int b = trail.back();
        trail.pop_back();
        size[parent[b]] -= size[b];
        parent[b] = b;
    }
};

}  // namespace detail

/// Finds a loop in S, or nothing if S is loop-free. Deterministic: the
/// grid is scanned row major, so identical inputs yield identical witnesses.
inline std::optional<LoopWitness> find_loop(const GridSubset& s) {
    if (s.cells.size() < 4) return std::nullopt;  // a loop uses >= 4 distinct cells
    const detail::IncidenceGraph g(s);

    std::vector<int> parent_vertex(g.num_vertices, -1);
    std::vector<int> parent_cell(g.num_vertices, -1);
    std::vector<char> visited(g.num_vertices, 0);
    std::optional<LoopWitness> found;

    // Undirected DFS; any non-tree edge closes a cycle with an ancestor.
    std::function<void(int)> dfs = [&](int u) {
        visited[u] = 1;
        for (const auto& [v, cell] : g.adj[u]) {
            if (found) return;
            if (cell == parent_cell[u]) continue;
            if (!visited[v]) {
                parent_vertex[v] = u;
                parent_cell[v] = cell;
                dfs(v);
            } else {
                LoopWitness w;
                w.cells.push_back(s.cells[cell]);
                for (int walk = u; walk != v; walk = parent_vertex[walk])
                    w.cells.push_back(s.cells[parent_cell[walk]]);
                std::reverse(w.cells.begin(), w.cells.end());
                w.cells.push_back(w.cells.front());
                found = std::move(w);
                return;
            }
        }
    };
    for (int v = 0; v < g.num_vertices && !found; ++v)
        if (!visited[v]) dfs(v);
    return found;
}

/// Goodness criterion: S is good iff it contains no loop, iff every
/// function on S splits as f(i,j) = u(i) + v(j).
inline bool is_good(const GridSubset& s) { return !find_loop(s).has_value(); }

struct Decomposition {
    std::vector<Rat> row_values;  // u, one per grid row
    std::vector<Rat> col_values;  // v, one per grid column
};

/// Attempts f(i,j) = u(i) + v(j) on S without assuming goodness; fails iff
/// the values are inconsistent around some loop. `values` is aligned with
/// s.cells. Normalization: in each connected component of the incidence
/// graph, u of the smallest touched row is 0; untouched rows/columns are 0.
inline std::optional<Decomposition> try_decompose(const GridSubset& s,
                                                  const std::vector<Rat>& values) {
    if (values.size() != s.cells.size())
        throw ValidationError("decompose: need exactly one value per cell");
    const detail::IncidenceGraph g(s);

    Decomposition d;
    d.row_values.assign(s.rows, Rat(0));
    d.col_values.assign(s.cols, Rat(0));

    std::vector<char> visited(g.num_vertices, 0);
    const auto value_at = [&](int vertex) -> Rat& {
        return vertex < s.rows ? d.row_values[vertex] : d.col_values[vertex - s.rows];
    };

    // BFS per component. Scanning row vertices first anchors each component
    // at its minimal touched row.
    std::vector<int> queue;
    for (int start = 0; start < g.num_vertices; ++start) {
        if (visited[start] || g.adj[start].empty()) continue;
        visited[start] = 1;
        value_at(start) = 0;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (const auto& [v, cell] : g.adj[u]) {
                if (visited[v]) continue;
                visited[v] = 1;
                value_at(v) = values[cell] - value_at(u);
                queue.push_back(v);
            }
        }
    }
    for (std::size_t e = 0; e < s.cells.size(); ++e)
        if (d.row_values[s.cells[e].row] + d.col_values[s.cells[e].col] != values[e])
            return std::nullopt;
    return d;
}

/// Checked decomposition; throws NotGoodError with a loop witness when S is
/// not good.
inline Decomposition decompose(const GridSubset& s, const std::vector<Rat>& values) {
    if (auto loop = find_loop(s)) throw NotGoodError(std::move(*loop));
    auto d = try_decompose(s, values);
    assert(d.has_value());  // loop-free incidence graphs are forests
    return std::move(*d);
}

/// Number of maximal good sets in an m x n grid, equal to the number of
/// spanning trees of K_{m,n}.
inline Int count_maximal_good(int m, int n) {
    if (m < 1 || n < 1) throw ValidationError("grid dimensions must be positive");
    return int_pow(m, static_cast<unsigned long>(n - 1)) *
           int_pow(n, static_cast<unsigned long>(m - 1));
}

/// Emits every loop-free (m+n-1)-subset exactly once, in lexicographic
/// order of the sorted cell lists. Refuses upfront when the closed-form
/// count exceeds `cap`.
template <class Emit>
inline void enumerate_maximal_good(int m, int n, Emit&& emit,
                                   std::uint64_t cap = kDefaultEnumerationCap) {
    const Int total = count_maximal_good(m, n);
    if (total > Int(static_cast<unsigned long>(cap)))
        throw CapExceeded("enumeration of " + total.get_str() +
                          " maximal good sets exceeds cap " + std::to_string(cap));

    const int target = m + n - 1;
    const int num_cells = m * n;
    detail::RollbackUnionFind uf(m + n);
    std::vector<Cell> chosen;
    chosen.reserve(target);

    // Cells are considered in ascending row-major order, so emitted subsets
    // come out in lexicographic order. Joining two already-connected
    // vertices would close a loop, so such cells are pruned.
    std::function<void(int)> extend = [&](int next) {
        if (static_cast<int>(chosen.size()) == target) {
            emit(GridSubset{m, n, chosen});
            return;
        }
        const int needed = target - static_cast<int>(chosen.size());
        for (int idx = next; idx + needed <= num_cells; ++idx) {
            const Cell c{idx / n, idx % n};
            if (!uf.unite(c.row, m + c.col)) continue;
            chosen.push_back(c);
            extend(idx + 1);
            chosen.pop_back();
            uf.rollback();
        }
    };
    extend(0);
}

inline std::vector<GridSubset> list_maximal_good(int m, int n,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<GridSubset> out;
    enumerate_maximal_good(m, n, [&](const GridSubset& s) { out.push_back(s); }, cap);
    return out;
}

/// Maximal good sets whose intersection with one fixed row is exactly k
/// cells at k fixed positions: k * n^(m-2) * (m-1)^(n-k).
inline Int count_fixed_row_points(int m, int n, int k) {
    if (m < 2 || n < 2)
        throw ValidationError("fixed-point counts need m, n >= 2");
    if (k < 1 || k > n) throw ValidationError("k out of range");
    return Int(k) * int_pow(n, static_cast<unsigned long>(m - 2)) *
           int_pow(m - 1, static_cast<unsigned long>(n - k));
}

/// Column version: k * m^(n-2) * (n-1)^(m-k).
inline Int count_fixed_col_points(int m, int n, int k) {
    if (m < 2 || n < 2)
        throw ValidationError("fixed-point counts need m, n >= 2");
    if (k < 1 || k > m) throw ValidationError("k out of range");
    return Int(k) * int_pow(m, static_cast<unsigned long>(n - 2)) *
           int_pow(n - 1, static_cast<unsigned long>(m - k));
}

/// Independent counting route: spanning trees of K_{m,n} via the
/// determinant of a Laplacian minor.
inline Int count_spanning_trees_matrix_tree(int m, int n) {
    if (m < 1 || n < 1) throw ValidationError("grid dimensions must be positive");
    const int dim = m + n - 1;  // drop the last column vertex
    std::vector<std::vector<Int>> lap(dim, std::vector<Int>(dim, Int(0)));
    for (int i = 0; i < m; ++i) lap[i][i] = n;
    for (int j = 0; j < n - 1; ++j) lap[m + j][m + j] = m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n - 1; ++j) {
            lap[i][m + j] = -1;
            lap[m + j][i] = -1;
        }
    return det_bareiss(std::move(lap));
}

// Test-surface oracle: goodness as solvability of the incidence system for
// every right-hand side, i.e. the |S| x (m+n) 0/1 system has rank |S|.
inline RatMatrix incidence_matrix(const GridSubset& s) {
    RatMatrix a(s.cells.size(), std::vector<Rat>(s.rows + s.cols, Rat(0)));
    for (std::size_t e = 0; e < s.cells.size(); ++e) {
        a[e][s.cells[e].row] = 1;
        a[e][s.rows + s.cells[e].col] = 1;
    }
    return a;
}

}  // namespace couplings
