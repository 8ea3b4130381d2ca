#pragma once

#include <algorithm>
#include <cstddef>

namespace ccqbf {

/// Search-tree counters shared by every solver.
struct SolveStats {
    std::size_t branch_nodes = 0;
    std::size_t leaves = 0;
    std::size_t max_depth = 0;
    std::size_t initial_k = 0;

    /// 2^initial_k, saturating.
    std::size_t leaf_budget() const {
        return initial_k >= 63 ? static_cast<std::size_t>(-1) : std::size_t{1} << initial_k;
    }
    bool within_budget() const { return leaves <= leaf_budget(); }

    SolveStats& operator+=(const SolveStats& other) {
        branch_nodes += other.branch_nodes;
        leaves += other.leaves;
        max_depth = std::max(max_depth, other.max_depth);
        return *this;
    }
};

struct SolveResult {
    bool value = false;
    SolveStats stats;
};

}  // namespace ccqbf
