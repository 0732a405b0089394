#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "couplings/good_sets.hpp"
#include "test_util.hpp"

using namespace couplings;
using namespace testutil;

namespace {

GridSubset subset_from_mask(int m, int n, unsigned mask) {
    std::vector<Cell> cells;
    for (int idx = 0; idx < m * n; ++idx)
        if (mask & (1u << idx)) cells.push_back(Cell{idx / n, idx % n});
    return GridSubset{m, n, std::move(cells)};
}

// Independent goodness oracle: the incidence system u_i + v_j = f(i,j) is
// solvable for every right-hand side iff its rank equals |S|.
bool rank_oracle_good(const GridSubset& s) {
    return rat_rank(incidence_matrix(s)) == s.size();
}

// Exhaustive filter over all (m+n-1)-subsets; cross-checks the pruned
// enumeration.
std::vector<GridSubset> bruteforce_maximal_good(int m, int n) {
    std::vector<GridSubset> out;
    const int cells = m * n, want = m + n - 1;
    for (unsigned mask = 0; mask < (1u << cells); ++mask) {
        if (std::popcount(mask) != want) continue;
        auto s = subset_from_mask(m, n, mask);
        if (is_good(s)) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("GridSubset canonicalizes and validates") {
    const auto s = GridSubset::of(2, 2, {Cell{1, 0}, Cell{0, 1}});
    CHECK(s.cells == std::vector<Cell>{Cell{0, 1}, Cell{1, 0}});
    CHECK_THROWS_AS(GridSubset::of(2, 2, {Cell{2, 0}}), ValidationError);
    CHECK_THROWS_AS(GridSubset::of(2, 2, {Cell{0, 0}, Cell{0, 0}}), ValidationError);
}

TEST_CASE("the full 2x2 grid is a loop") {
    const auto s = GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const auto loop = find_loop(s);
    REQUIRE(loop.has_value());
    CHECK(loop->cells.size() == 5);  // all four cells, first repeated
    CHECK(is_valid_loop(*loop, s));
    CHECK_FALSE(is_good(s));
}

TEST_CASE("small subsets contain no loop") {
    CHECK_FALSE(find_loop(GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}})).has_value());
    CHECK(is_good(GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}})));
    CHECK(is_good(GridSubset{3, 3, {}}));  // empty set is good
}

TEST_CASE("goodness agrees with the incidence-rank oracle exhaustively") {
    const std::vector<std::pair<int, int>> grids{{2, 2}, {3, 3}, {2, 4}, {3, 4}, {4, 4}};
    for (const auto& [m, n] : grids) {
        for (unsigned mask = 0; mask < (1u << (m * n)); ++mask) {
            const auto s = subset_from_mask(m, n, mask);
            const auto loop = find_loop(s);
            const bool good = is_good(s);
            CHECK(good == !loop.has_value());
            CHECK(good == rank_oracle_good(s));
            if (loop) CHECK(is_valid_loop(*loop, s));
        }
    }
}

TEST_CASE("subsets of good sets are good") {
    std::mt19937 rng(17);
    for (const auto& s : list_maximal_good(3, 4)) {
        unsigned mask = rng();
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < s.cells.size(); ++i)
            if (mask & (1u << i)) cells.push_back(s.cells[i]);
        CHECK(is_good(GridSubset{s.rows, s.cols, std::move(cells)}));
    }
}

TEST_CASE("decompose matches the worked example") {
    const auto s = GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    const auto d = decompose(s, {Rat(5), Rat(7), Rat(4)});
    CHECK(d.row_values == std::vector<Rat>{Rat(0), Rat(-1)});
    CHECK(d.col_values == std::vector<Rat>{Rat(5), Rat(7)});
}

TEST_CASE("decompose of the zero function is zero") {
    const auto s = GridSubset::of(3, 3, {{0, 0}, {0, 2}, {1, 1}, {2, 0}});
    const auto d = decompose(s, {Rat(0), Rat(0), Rat(0), Rat(0)});
    for (const auto& u : d.row_values) CHECK(u == 0);
    for (const auto& v : d.col_values) CHECK(v == 0);
}

TEST_CASE("decompose pins a single cell to the column value") {
    const auto s = GridSubset::of(4, 5, {{2, 3}});
    const auto d = decompose(s, {Rat(9)});
    CHECK(d.row_values == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK(d.col_values == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(9), Rat(0)});
}

TEST_CASE("decompose on a loop throws with a witness") {
    const auto s = GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    try {
        decompose(s, {Rat(1), Rat(2), Rat(3), Rat(4)});
        FAIL("expected NotGoodError");
    } catch (const NotGoodError& e) {
        CHECK(is_valid_loop(e.witness, s));
    }
}

TEST_CASE("decompose is exact on random good sets") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto all = list_maximal_good(m, n);
        const auto& s = all[rng() % all.size()];
        std::vector<Rat> f;
        for (std::size_t i = 0; i < s.size(); ++i) f.push_back(random_rational(rng));
        const auto d = decompose(s, f);
        for (std::size_t i = 0; i < s.size(); ++i)
            REQUIRE(d.row_values[s.cells[i].row] + d.col_values[s.cells[i].col] == f[i]);
    }
}

TEST_CASE("try_decompose detects inconsistent loop values") {
    const auto s = GridSubset::of(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK_FALSE(try_decompose(s, {Rat(1), Rat(2), Rat(3), Rat(4)}).has_value());
    // around the loop f is additive here, so the split exists even with a loop
    CHECK(try_decompose(s, {Rat(0), Rat(1), Rat(2), Rat(3)}).has_value());
}

TEST_CASE("maximal good enumeration in a single row") {
    const auto all = list_maximal_good(1, 4);
    REQUIRE(all.size() == 1);
    CHECK(all[0].size() == 4);  // the whole row
}

TEST_CASE("maximal good sets of the 2x2 grid are the four triples") {
    const auto all = list_maximal_good(2, 2);
    REQUIRE(all.size() == 4);
    for (const auto& s : all) CHECK(s.size() == 3);
}

TEST_CASE("enumeration agrees with the brute-force subset filter") {
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
        const auto fast = list_maximal_good(m, n);
        const auto brute = bruteforce_maximal_good(m, n);
        REQUIRE(fast.size() == brute.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].cells == brute[i].cells);
    }
}

TEST_CASE("enumeration is lexicographic and loop-free with maximal size") {
    const auto all = list_maximal_good(3, 3);
    CHECK(all.size() == 81);
    std::vector<std::vector<Cell>> order;
    for (const auto& s : all) {
        CHECK(s.size() == 5);
        CHECK(is_good(s));
        order.push_back(s.cells);
    }
    CHECK(std::is_sorted(order.begin(), order.end()));
}

TEST_CASE("adding any absent cell to a maximal good set creates a loop") {
    for (const auto& s : list_maximal_good(2, 3)) {
        std::set<Cell> present(s.cells.begin(), s.cells.end());
        for (int i = 0; i < s.rows; ++i)
            for (int j = 0; j < s.cols; ++j) {
                if (present.count(Cell{i, j})) continue;
                auto bigger = s.cells;
                bigger.push_back(Cell{i, j});
                CHECK_FALSE(is_good(GridSubset::of(s.rows, s.cols, std::move(bigger))));
            }
    }
}

TEST_CASE("counting formula matches enumeration and the determinant") {
    CHECK(count_maximal_good(2, 2) == 4);
    CHECK(count_maximal_good(3, 3) == 81);
    for (int n = 1; n <= 6; ++n) CHECK(count_maximal_good(1, n) == 1);
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const Int formula = count_maximal_good(m, n);
            CHECK(formula == count_spanning_trees_matrix_tree(m, n));
            CHECK(Int(static_cast<long>(list_maximal_good(m, n).size())) == formula);
        }
}

TEST_CASE("matrix-tree determinant on the spot values") {
    CHECK(count_spanning_trees_matrix_tree(2, 2) == 4);
    CHECK(count_spanning_trees_matrix_tree(2, 3) == 12);
    CHECK(count_spanning_trees_matrix_tree(1, 1) == 1);
}

TEST_CASE("fixed-point counts match the closed forms and enumeration") {
    CHECK(count_fixed_col_points(2, 2, 1) == 1);
    CHECK(count_fixed_col_points(2, 2, 2) == 2);

    // enumeration cross-check: fix the first k cells of row 0 / column 0
    for (int m = 2; m <= 4; ++m)
        for (int n = 2; n <= 4; ++n) {
            const auto all = list_maximal_good(m, n);
            for (int k = 1; k <= n; ++k) {
                long hits = 0;
                for (const auto& s : all) {
                    std::vector<int> row0;
                    for (const Cell& c : s.cells)
                        if (c.row == 0) row0.push_back(c.col);
                    if (static_cast<int>(row0.size()) == k && row0.back() == k - 1) ++hits;
                }
                CHECK(Int(hits) == count_fixed_row_points(m, n, k));
            }
            for (int k = 1; k <= m; ++k) {
                long hits = 0;
                for (const auto& s : all) {
                    std::vector<int> col0;
                    for (const Cell& c : s.cells)
                        if (c.col == 0) col0.push_back(c.row);
                    if (static_cast<int>(col0.size()) == k && col0.back() == k - 1) ++hits;
                }
                CHECK(Int(hits) == count_fixed_col_points(m, n, k));
            }
        }
}

TEST_CASE("binomial-weighted fixed-point sums give the total") {
    for (int m = 2; m <= 5; ++m)
        for (int n = 2; n <= 5; ++n) {
            Int by_rows(0), by_cols(0);
            for (int k = 1; k <= n; ++k) by_rows += binomial(n, k) * count_fixed_row_points(m, n, k);
            for (int k = 1; k <= m; ++k) by_cols += binomial(m, k) * count_fixed_col_points(m, n, k);
            CHECK(by_rows == count_maximal_good(m, n));
            CHECK(by_cols == count_maximal_good(m, n));
        }
}

TEST_CASE("degenerate fixed-point inputs are refused") {
    CHECK_THROWS_AS(count_fixed_row_points(1, 3, 1), ValidationError);
    CHECK_THROWS_AS(count_fixed_col_points(3, 1, 1), ValidationError);
    CHECK_THROWS_AS(count_fixed_row_points(3, 3, 0), ValidationError);
    CHECK_THROWS_AS(count_fixed_row_points(3, 3, 4), ValidationError);
}

TEST_CASE("summation identities behind the counting theorem") {
    // sum_k C(m,k) k n^(m-k) m^(n-1) = m^n (n+1)^(m-1)
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            Int lhs(0);
            for (int k = 1; k <= m; ++k)
                lhs += binomial(m, k) * Int(k) * int_pow(n, m - k) * int_pow(m, n - 1);
            CHECK(lhs == int_pow(m, n) * int_pow(n + 1, m - 1));
        }
    // sum_r C(n,r) r k^r n^(m-k-1) (m-k)^(n-r) = k n^(m-k) m^(n-1)
    for (int m = 2; m <= 6; ++m)
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k < m; ++k) {
                Int lhs(0);
                for (int r = 1; r <= n; ++r)
                    lhs += binomial(n, r) * Int(r) * int_pow(k, r) * int_pow(n, m - k - 1) *
                           int_pow(m - k, n - r);
                CHECK(lhs == Int(k) * int_pow(n, m - k) * int_pow(m, n - 1));
            }
}

TEST_CASE("enumeration refuses to exceed the cap") {
    CHECK_THROWS_AS(list_maximal_good(3, 3, 80), CapExceeded);
    CHECK_NOTHROW(list_maximal_good(3, 3, 81));
}
