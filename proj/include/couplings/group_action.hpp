#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "couplings/errors.hpp"
#include "couplings/rational.hpp"

namespace couplings {

// A permutation in one-line notation: perm[i] is the image of i.
using Perm = std::vector<int>;

// One abstract group generator g, given by its action on X and on Y
// simultaneously. The diagonal action g(x,y) = (g(x), g(y)) is derived
// from the pair; we never materialize the generated group.
struct GeneratorPair {
    Perm on_x;
    Perm on_y;
};

/// A finite G-action on X and Y, |X| = x_size, |Y| = y_size, G given by
/// generators. An empty generator list is the trivial group.
struct ActionSpec {
    int x_size = 0;
    int y_size = 0;
    std::vector<GeneratorPair> generators;

    // Cells of X x Y are indexed row major.
    int cell_index(int x, int y) const { return x * y_size + y; }
    std::pair<int, int> cell_of(int index) const { return {index / y_size, index % y_size}; }
    int num_cells() const { return x_size * y_size; }
};

/// Orbit partition of {0..universe_size-1}. Orbit ids are dense and
/// canonical: sorted by each orbit's minimal element.
struct OrbitPartition {
    int universe_size = 0;
    std::vector<int> orbit_of;        // element -> orbit id
    std::vector<std::vector<int>> orbits;  // orbit id -> ascending members

    int num_orbits() const { return static_cast<int>(orbits.size()); }
};

namespace detail {

inline bool is_permutation_of(const Perm& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep the minimal element as root
        parent[b] = a;
    }
};

// Canonical partition from a union-find closure: orbit ids ordered by
// minimal member, members ascending.
inline OrbitPartition partition_from(UnionFind& uf, int n) {
    OrbitPartition part;
    part.universe_size = n;
    part.orbit_of.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        const int root = uf.find(v);
        if (part.orbit_of[root] == -1) {
            part.orbit_of[root] = static_cast<int>(part.orbits.size());
            part.orbits.emplace_back();
        }
        part.orbit_of[v] = part.orbit_of[root];
        part.orbits[part.orbit_of[v]].push_back(v);
    }
    return part;
}

}  // namespace detail

/// Report-style validation: an empty list means the spec is well formed.
inline std::vector<std::string> validate_action(const ActionSpec& spec) {
    std::vector<std::string> violations;
    if (spec.x_size <= 0) violations.push_back("x_size must be positive");
    if (spec.y_size <= 0) violations.push_back("y_size must be positive");
    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
        const auto& gen = spec.generators[g];
        if (static_cast<int>(gen.on_x.size()) != spec.x_size)
            violations.push_back("generator " + std::to_string(g) + ": perm_x size mismatch");
        else if (!detail::is_permutation_of(gen.on_x, spec.x_size))
            violations.push_back("generator " + std::to_string(g) + ": perm_x not a bijection");
        if (static_cast<int>(gen.on_y.size()) != spec.y_size)
            violations.push_back("generator " + std::to_string(g) + ": perm_y size mismatch");
        else if (!detail::is_permutation_of(gen.on_y, spec.y_size))
            violations.push_back("generator " + std::to_string(g) + ": perm_y not a bijection");
    }
    return violations;
}

inline void require_valid(const ActionSpec& spec) {
    const auto violations = validate_action(spec);
    if (violations.empty()) return;
    std::string msg = "invalid action spec:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw ValidationError(msg);
}

inline OrbitPartition orbits_x(const ActionSpec& spec) {
    require_valid(spec);
    detail::UnionFind uf(spec.x_size);
    for (const auto& gen : spec.generators)
        for (int x = 0; x < spec.x_size; ++x) uf.unite(x, gen.on_x[x]);
    return detail::partition_from(uf, spec.x_size);
}

inline OrbitPartition orbits_y(const ActionSpec& spec) {
    require_valid(spec);
    detail::UnionFind uf(spec.y_size);
    for (const auto& gen : spec.generators)
        for (int y = 0; y < spec.y_size; ++y) uf.unite(y, gen.on_y[y]);
    return detail::partition_from(uf, spec.y_size);
}

/// Orbits of the diagonal action on X x Y, cells row major; the number of
/// orbits is the paper-level quantity m12.
inline OrbitPartition orbits_product(const ActionSpec& spec) {
    require_valid(spec);
    detail::UnionFind uf(spec.num_cells());
    for (const auto& gen : spec.generators)
        for (int x = 0; x < spec.x_size; ++x)
            for (int y = 0; y < spec.y_size; ++y)
                uf.unite(spec.cell_index(x, y), spec.cell_index(gen.on_x[x], gen.on_y[y]));
    return detail::partition_from(uf, spec.num_cells());
}

/// True iff the vector is constant on every orbit.
inline bool is_invariant_vector(const std::vector<Rat>& values, const OrbitPartition& partition) {
    if (static_cast<int>(values.size()) != partition.universe_size)
        throw ValidationError("is_invariant_vector: length mismatch");
    for (const auto& orbit : partition.orbits)
        for (std::size_t i = 1; i < orbit.size(); ++i)
            if (values[orbit[i]] != values[orbit[0]]) return false;
    return true;
}

}  // namespace couplings
