#pragma once

// Distance ordering with near-optimal comparison count on directed graphs:
// drop arcs into dominators, contract dominator-tree chains, deduplicate
// parallel arcs lazily, run Dijkstra with the working-set heap on what is
// left, expand the tree back and linearize it by merging.

#include <cstdint>
#include <string>
#include <vector>

#include "uopt/audit.hpp"
#include "uopt/dijkstra.hpp"
#include "uopt/dominators.hpp"
#include "uopt/graph.hpp"
#include "uopt/weights.hpp"

namespace uopt {

/// Arcs uv of g where v does not dominate u (self-loops go too).
std::vector<std::uint32_t> kept_arcs(const Graph& g, const DominatorTree& dom);

/// Result of contracting every maximal chain of single-child dominator-tree
/// nodes into its head.
struct Contraction {
    std::vector<std::uint32_t> phi;                     // original vertex -> contracted vertex
    std::vector<std::vector<std::uint32_t>> members;    // contracted vertex -> chain, head first
    std::vector<std::uint32_t> chain_arc;               // original arc from the chain predecessor
    std::vector<WeightHandle> prefix;                   // distance from the chain head
    Graph graph;                                        // multigraph G''
    std::vector<std::uint32_t> origin;                  // G'' arc -> original arc
    std::size_t contractions = 0;
    std::uint64_t chain_parallel_comparisons = 0;       // minima over parallel chain arcs

    bool is_head(std::uint32_t v) const { return members[phi[v]].front() == v; }
};

/// Builds G'' from the arcs kept after dropping. Throws InvariantViolation if
/// a chain vertex has an incoming arc from outside its dominator parent.
Contraction contract_chains(const Graph& g, WeightArena& arena, const DominatorTree& dom,
                            const std::vector<std::uint32_t>& kept);

/// Structural checks on a contraction: chain vertices are entered only from
/// their predecessor, and no other arc jumps into a chain's subtree except
/// through its head. Returns a description of every failure.
std::vector<std::string> check_contraction(const Graph& g, const DominatorTree& dom,
                                           const std::vector<std::uint32_t>& kept, const Contraction& c);

/// Simple graph G' over the contracted vertices: one arc per (X, Y) group of
/// parallel G'' arcs. A group's weight is its minimum, found on first use
/// with size - 1 counted comparisons.
class LazyDedup {
public:
    LazyDedup(const Graph& multigraph, WeightArena& arena);

    const Graph& graph() const { return simple_; }
    /// Weight of simple arc `a`, computing the group minimum on first call.
    WeightHandle weight(std::uint32_t a);
    /// G'' arc achieving the minimum; weight(a) must have been called.
    std::uint32_t argmin(std::uint32_t a) const { return argmin_[a]; }
    const std::vector<std::uint32_t>& group(std::uint32_t a) const { return groups_[a]; }
    std::uint64_t spent() const { return spent_; }

private:
    const Graph* multi_;
    WeightArena* arena_;
    Graph simple_;
    std::vector<std::vector<std::uint32_t>> groups_;
    std::vector<WeightHandle> min_;
    std::vector<std::uint32_t> argmin_;
    std::uint64_t spent_ = 0;
};

struct OptimalRun {
    std::vector<std::uint32_t> linearization;
    std::vector<WeightHandle> dist;
    SpanningTree sssp;

    std::uint32_t contracted_n = 0;          // n' = n''
    std::size_t contracted_arcs = 0;         // |E''|
    std::size_t simple_arcs = 0;             // |E'|
    std::size_t dropped_arcs = 0;
    std::size_t contractions = 0;
    std::size_t forward_contracted = 0;      // |F_{G'',w''}|, audited
    std::size_t forward_contracted_ordered = 0;  // same with ties broken by the core run's order

    std::uint64_t chain_parallel_comparisons = 0;
    std::uint64_t dedup_comparisons = 0;     // lazy minima during the core run
    Counters sssp_stage;                     // contraction through uncontraction
    Counters tree_stage;                     // merging
    Counters total;                          // sssp_stage + tree_stage
    DijkstraRun core;                        // Dijkstra on G'
};

/// Comparisons of sssp_via_contraction stay below this multiple of
/// E(greedy coloring of the core run) + n' + |F_{G'',w''}|.
inline constexpr double kSsspStageConstant = 32;

/// Shortest-path tree and distances of g through dominator contraction; the
/// linearization and tree stage are left empty. Needs a directed graph with
/// every vertex reachable.
OptimalRun sssp_via_contraction(const Graph& g, WeightArena& arena, WorkSetOptions options = {});

/// sssp_via_contraction followed by tree_dp_linearize.
OptimalRun optimal_distance_ordering(const Graph& g, WeightArena& arena, WorkSetOptions options = {});

}  // namespace uopt
