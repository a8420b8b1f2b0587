#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nakt {

inline constexpr const char* kZeroLabel = "0\xCC\x84";  // "0̄", reserved

/// Validated ultra-(pseudo)metric on labeled points.
struct UltraSpace {
    std::vector<std::string> points;
    std::vector<std::vector<Rational>> dist;
    bool pseudometric_allowed = false;
    bool has_zero_point = false;

    std::size_t size() const { return points.size(); }
    std::size_t index_of(const std::string& label) const;
    const Rational& d(std::size_t i, std::size_t j) const { return dist[i][j]; }
    Rational diameter() const;
};

/// Checks symmetry, zero diagonal, nonnegativity and the strong triangle
/// inequality; reports the first offending triple.
UltraSpace validate_ultrametric(std::vector<std::string> points,
                                std::vector<std::vector<Rational>> dist,
                                bool pseudometric_allowed);

/// Appends the isolated point 0-bar with d(x, 0) = max{d(x, basepoint), 1}.
UltraSpace extend_with_zero(const UltraSpace& space, const std::string& basepoint);

/// Variant with explicit d(x, 0) values (one per existing point).
UltraSpace extend_with_zero_explicit(const UltraSpace& space,
                                     const std::vector<Rational>& zero_distances);

/// Merge hierarchy of the metric's threshold partitions. Node 0..n-1 are the
/// leaves; internal nodes follow in creation order, root last.
struct Dendrogram {
    struct Node {
        Rational height = 0;            // 0 for leaves
        std::vector<int> children;      // empty for leaves
        int parent = -1;
        std::vector<int> leaves;        // point indices, sorted
    };
    std::vector<Node> nodes;
    int root = -1;

    std::size_t leaf_count = 0;
    bool is_leaf(int i) const { return static_cast<std::size_t>(i) < leaf_count; }
    /// d(x,y) = height of the lowest common ancestor.
    Rational lca_height(int leaf_a, int leaf_b) const;
};

/// Deterministic single-linkage hierarchy; children ordered by smallest
/// point index, ties in merge order broken the same way.
Dendrogram build_dendrogram(const UltraSpace& space);

/// Restriction of a space to a subset of its points (indices into space).
UltraSpace restrict_space(const UltraSpace& space, const std::vector<std::size_t>& idx);

}  // namespace nakt
