#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "couplings/errors.hpp"
#include "couplings/g_good.hpp"
#include "couplings/good_sets.hpp"
#include "couplings/group_action.hpp"
#include "couplings/linalg.hpp"
#include "couplings/rational.hpp"

namespace couplings {

/// Everything derived from an action that the measure machinery needs:
/// orbit partitions, the orbit grid, and per-orbit incidence counts.
/// row_count[i][o] = number of cells of product orbit o in one fixed row
/// of X-orbit i (the same for every row of the orbit, by invariance).
struct ActionTables {
    ActionSpec spec;
    OrbitPartition x_orbits;
    OrbitPartition y_orbits;
    OrbitPartition product_orbits;
    OrbitGrid grid;
    std::vector<std::vector<int>> row_count;
    std::vector<std::vector<int>> col_count;

    explicit ActionTables(ActionSpec s) : spec(std::move(s)) {
        require_valid(spec);
        x_orbits = orbits_x(spec);
        y_orbits = orbits_y(spec);
        product_orbits = orbits_product(spec);
        grid = build_orbit_grid(x_orbits, y_orbits, product_orbits, spec.y_size);
        row_count.assign(x_orbits.num_orbits(), std::vector<int>(m12(), 0));
        col_count.assign(y_orbits.num_orbits(), std::vector<int>(m12(), 0));
        for (int i = 0; i < x_orbits.num_orbits(); ++i) {
            const int x = x_orbits.orbits[i].front();
            for (int y = 0; y < spec.y_size; ++y)
                ++row_count[i][product_orbits.orbit_of[spec.cell_index(x, y)]];
        }
        for (int j = 0; j < y_orbits.num_orbits(); ++j) {
            const int y = y_orbits.orbits[j].front();
            for (int x = 0; x < spec.x_size; ++x)
                ++col_count[j][product_orbits.orbit_of[spec.cell_index(x, y)]];
        }
    }

    int m12() const { return product_orbits.num_orbits(); }
    int orbit_of_cell(int x, int y) const { return product_orbits.orbit_of[spec.cell_index(x, y)]; }
};

/// G-invariant marginals with full support; exact rationals summing to 1.
struct Marginals {
    std::vector<Rat> mu1;
    std::vector<Rat> mu2;
};

/// A G-invariant measure on X x Y, stored as one value per product orbit
/// (the per-cell value, constant on the orbit).
struct InvariantMeasure {
    std::vector<Rat> orbit_values;

    GInvariantSubset support() const {
        GInvariantSubset s;
        for (std::size_t o = 0; o < orbit_values.size(); ++o)
            if (orbit_values[o] > 0) s.push_back(static_cast<int>(o));
        return s;
    }

    bool operator==(const InvariantMeasure& other) const = default;
};

inline Rat cell_value(const ActionTables& t, const InvariantMeasure& mu, int x, int y) {
    return mu.orbit_values[t.orbit_of_cell(x, y)];
}

inline void validate_marginals(const ActionTables& t, const Marginals& marg) {
    if (static_cast<int>(marg.mu1.size()) != t.spec.x_size ||
        static_cast<int>(marg.mu2.size()) != t.spec.y_size)
        throw ValidationError("marginal dimension mismatch");
    Rat sum1(0), sum2(0);
    for (const Rat& v : marg.mu1) sum1 += v;
    for (const Rat& v : marg.mu2) sum2 += v;
    if (sum1 != sum2) throw ValidationError("marginal mass mismatch");
    if (sum1 != 1) throw ValidationError("marginal total mass must be 1");
    for (const Rat& v : marg.mu1)
        if (v <= 0) throw ValidationError("mu1 must have full support (all entries > 0)");
    for (const Rat& v : marg.mu2)
        if (v <= 0) throw ValidationError("mu2 must have full support (all entries > 0)");
    if (!is_invariant_vector(marg.mu1, t.x_orbits))
        throw ValidationError("mu1 is not constant on X-orbits");
    if (!is_invariant_vector(marg.mu2, t.y_orbits))
        throw ValidationError("mu2 is not constant on Y-orbits");
}

/// Membership in K(mu1, mu2): nonnegative values whose row sums equal mu1
/// and column sums equal mu2, all exactly.
inline bool validate_membership(const ActionTables& t, const Marginals& marg,
                                const InvariantMeasure& mu) {
    if (static_cast<int>(mu.orbit_values.size()) != t.m12())
        throw ValidationError("measure dimension mismatch: expected one value per product orbit");
    validate_marginals(t, marg);
    for (const Rat& v : mu.orbit_values)
        if (v < 0) return false;
    for (int i = 0; i < t.x_orbits.num_orbits(); ++i) {
        Rat sum(0);
        for (int o = 0; o < t.m12(); ++o)
            if (t.row_count[i][o] != 0) sum += Rat(t.row_count[i][o]) * mu.orbit_values[o];
        if (sum != marg.mu1[t.x_orbits.orbits[i].front()]) return false;
    }
    for (int j = 0; j < t.y_orbits.num_orbits(); ++j) {
        Rat sum(0);
        for (int o = 0; o < t.m12(); ++o)
            if (t.col_count[j][o] != 0) sum += Rat(t.col_count[j][o]) * mu.orbit_values[o];
        if (sum != marg.mu2[t.y_orbits.orbits[j].front()]) return false;
    }
    return true;
}

namespace detail {

inline void require_member(const ActionTables& t, const Marginals& marg,
                           const InvariantMeasure& mu) {
    if (!validate_membership(t, marg, mu))
        throw ValidationError("measure is not in K(mu1, mu2)");
}

// Marginal constraint system restricted to the given orbit ids: one
// equation per X-orbit and per Y-orbit, one unknown per listed orbit.
inline std::pair<RatMatrix, std::vector<Rat>> support_system(const ActionTables& t,
                                                             const Marginals& marg,
                                                             const GInvariantSubset& orbit_ids) {
    const int m1 = t.x_orbits.num_orbits();
    const int n1 = t.y_orbits.num_orbits();
    RatMatrix a(m1 + n1, std::vector<Rat>(orbit_ids.size(), Rat(0)));
    std::vector<Rat> b(m1 + n1, Rat(0));
    for (int i = 0; i < m1; ++i) {
        for (std::size_t u = 0; u < orbit_ids.size(); ++u)
            a[i][u] = t.row_count[i][orbit_ids[u]];
        b[i] = marg.mu1[t.x_orbits.orbits[i].front()];
    }
    for (int j = 0; j < n1; ++j) {
        for (std::size_t u = 0; u < orbit_ids.size(); ++u)
            a[m1 + j][u] = t.col_count[j][orbit_ids[u]];
        b[m1 + j] = marg.mu2[t.y_orbits.orbits[j].front()];
    }
    return {std::move(a), std::move(b)};
}

inline InvariantMeasure measure_from(const ActionTables& t, const GInvariantSubset& orbit_ids,
                                     const std::vector<Rat>& values) {
    InvariantMeasure mu;
    mu.orbit_values.assign(t.m12(), Rat(0));
    for (std::size_t u = 0; u < orbit_ids.size(); ++u) mu.orbit_values[orbit_ids[u]] = values[u];
    return mu;
}

// Solve on a maximal G-good support without revalidating the inputs.
inline std::optional<InvariantMeasure> solve_unchecked(const ActionTables& t,
                                                       const Marginals& marg,
                                                       const GInvariantSubset& support) {
    auto [a, b] = support_system(t, marg, support);
    const LinearSolution sol = solve_linear(std::move(a), std::move(b));
    if (!sol.consistent || !sol.unique)
        throw std::logic_error("marginal system unsolvable on a maximal G-good support");
    for (const Rat& v : sol.values)
        if (v < 0) return std::nullopt;
    return measure_from(t, support, sol.values);
}

// Canonical result order: by sorted support orbit ids. Distinct extreme
// measures have distinct supports, so this is a total order on the output.
inline std::vector<InvariantMeasure> finalize_measures(std::vector<InvariantMeasure> found) {
    std::sort(found.begin(), found.end(), [](const InvariantMeasure& x, const InvariantMeasure& y) {
        const auto sx = x.support(), sy = y.support();
        if (sx != sy) return sx < sy;
        return x.orbit_values < y.orbit_values;
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace detail

/// Extremality via the zeta criterion: mu is extreme iff no nonzero
/// G-invariant zeta on the support has all mu-weighted row and column sums
/// equal to zero. One unknown per support orbit; extreme iff the system's
/// nullspace is trivial.
inline bool is_extreme_zeta(const ActionTables& t, const Marginals& marg,
                            const InvariantMeasure& mu) {
    detail::require_member(t, marg, mu);
    const GInvariantSubset support = mu.support();
    const int m1 = t.x_orbits.num_orbits();
    const int n1 = t.y_orbits.num_orbits();
    RatMatrix a(m1 + n1, std::vector<Rat>(support.size(), Rat(0)));
    for (int i = 0; i < m1; ++i)
        for (std::size_t u = 0; u < support.size(); ++u)
            a[i][u] = Rat(t.row_count[i][support[u]]) * mu.orbit_values[support[u]];
    for (int j = 0; j < n1; ++j)
        for (std::size_t u = 0; u < support.size(); ++u)
            a[m1 + j][u] = Rat(t.col_count[j][support[u]]) * mu.orbit_values[support[u]];
    return rat_rank(std::move(a)) == support.size();
}

/// Extremality via the support criterion: mu is extreme iff its support is
/// a G-good set.
inline bool is_extreme_support(const ActionTables& t, const Marginals& marg,
                               const InvariantMeasure& mu) {
    detail::require_member(t, marg, mu);
    return is_ggood(t.grid, mu.support());
}

/// Solves the marginal equations on a maximal G-good support. The solution
/// is unique; it is returned iff all values are nonnegative. Zero values
/// are allowed (the measure's true support shrinks to a G-good subset).
inline std::optional<InvariantMeasure> solve_on_support(const ActionTables& t,
                                                        const Marginals& marg,
                                                        const GInvariantSubset& support) {
    validate_marginals(t, marg);
    for (int o : support)
        if (o < 0 || o >= t.m12())
            throw ValidationError("unknown product orbit id " + std::to_string(o));
    if (static_cast<int>(support.size()) !=
            t.x_orbits.num_orbits() + t.y_orbits.num_orbits() - 1 ||
        !is_ggood(t.grid, support))
        throw ValidationError("support is not a maximal G-good set");
    return detail::solve_unchecked(t, marg, support);
}

/// All extreme points of K(mu1, mu2): solve on every maximal G-good
/// support, keep the nonnegative solutions, deduplicate by exact value
/// maps. Canonical output order: by sorted support orbit ids.
inline std::vector<InvariantMeasure> enumerate_extreme(const ActionTables& t,
                                                       const Marginals& marg,
                                                       std::uint64_t cap = kDefaultEnumerationCap) {
    validate_marginals(t, marg);
    std::vector<InvariantMeasure> found;
    enumerate_maximal_ggood(t.grid, [&](const GInvariantSubset& support) {
        if (auto mu = detail::solve_unchecked(t, marg, support)) found.push_back(std::move(*mu));
    }, cap);
    return detail::finalize_measures(std::move(found));
}

struct BoundReport {
    std::size_t count = 0;  // |E(mu1, mu2)|
    Int bound = 0;          // binomial(m12, m1+n1-1)
    bool holds = false;
};

inline BoundReport verify_bound(const ActionTables& t, const Marginals& marg,
                                std::uint64_t cap = kDefaultEnumerationCap) {
    BoundReport report;
    report.count = enumerate_extreme(t, marg, cap).size();
    report.bound = binomial(static_cast<unsigned long>(t.m12()),
                            static_cast<unsigned long>(t.x_orbits.num_orbits() +
                                                       t.y_orbits.num_orbits() - 1));
    report.holds = Int(static_cast<unsigned long>(report.count)) <= report.bound;
    return report;
}

/// Independent vertex oracle: tries every subset of product orbits as a
/// candidate support and keeps the unique, exactly nonnegative solutions.
/// Exponential in m12; guarded accordingly.
inline std::vector<InvariantMeasure> bruteforce_vertices(const ActionTables& t,
                                                         const Marginals& marg) {
    validate_marginals(t, marg);
    if (t.m12() > 12)
        throw CapExceeded("bruteforce_vertices is limited to m12 <= 12, got " +
                          std::to_string(t.m12()));
    std::vector<InvariantMeasure> found;
    const std::uint32_t num_masks = 1u << t.m12();
    for (std::uint32_t mask = 1; mask < num_masks; ++mask) {
        GInvariantSubset ids;
        for (int o = 0; o < t.m12(); ++o)
            if (mask & (1u << o)) ids.push_back(o);
        auto [a, b] = detail::support_system(t, marg, ids);
        const LinearSolution sol = solve_linear(std::move(a), std::move(b));
        if (!sol.consistent || !sol.unique) continue;
        if (std::any_of(sol.values.begin(), sol.values.end(), [](const Rat& v) { return v < 0; }))
            continue;
        found.push_back(detail::measure_from(t, ids, sol.values));
    }
    return detail::finalize_measures(std::move(found));
}

}  // namespace couplings
