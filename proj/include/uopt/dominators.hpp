#pragma once

#include <cstdint>
#include <vector>

#include "uopt/graph.hpp"

namespace uopt {

struct DominatorTree {
    std::uint32_t root = 0;
    std::vector<std::uint32_t> idom;   // kNoVertex at the root
    std::vector<std::uint32_t> tin;    // DFS entry time in the dominator tree
    std::vector<std::uint32_t> tout;   // DFS exit time

    /// u dominates v (reflexive).
    bool dominates(std::uint32_t u, std::uint32_t v) const {
        return u == v || (tin[u] < tin[v] && tout[v] < tout[u]);
    }
    std::size_t size() const { return idom.size(); }
    SpanningTree as_tree() const;
};

/// Lengauer-Tarjan (simple link-eval variant). Requires every vertex to be
/// reachable from the source.
DominatorTree dominator_tree(const Graph& g);

}  // namespace uopt
