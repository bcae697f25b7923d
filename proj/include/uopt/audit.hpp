#pragma once

// Constructive lower bounds for a Dijkstra run: working sets, cost, greedy
// intersecting coloring and its energy, barrier sequences, linearization
// counts of trees, BFS layers.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uopt/dijkstra.hpp"
#include "uopt/graph.hpp"

namespace uopt {

/// |W_x| for every interval of the set.
std::vector<std::size_t> working_sets(const IntervalSet& intervals);

/// sum of log2 |W_x|.
double cost(const IntervalSet& intervals);

struct IntersectingColoring {
    std::vector<std::uint32_t> color;        // per interval, 0-based
    std::vector<std::size_t> class_size;     // c_i
    std::vector<std::int64_t> witness;       // a time inside every member
};

/// Repeatedly takes the largest working set, which is the set of all
/// intervals alive at a time of maximum overlap, as the next color.
/// Colors are numbered by increasing witness time, where the witness is the
/// latest start among the members.
IntersectingColoring greedy_coloring(const IntervalSet& intervals);

/// 2 sum c_i log2 c_i.
double energy(const IntersectingColoring& coloring);

/// True when every color class has a common point.
bool is_intersecting(const IntersectingColoring& coloring, const IntervalSet& intervals);

/// (descendant, ancestor) pair showing the classes are not a barrier
/// sequence of `tree` in color order, or nullopt when they are.
std::optional<std::pair<std::uint32_t, std::uint32_t>> verify_barrier_sequence(const IntersectingColoring& coloring,
                                                                              const SpanningTree& tree);

/// log2 of the number of linearizations of a rooted tree:
/// log2(n!) - sum over v of log2 |T(v)|.
double tree_log_linearizations(const SpanningTree& tree);

/// sum over colors of log2(c_i!).
double barrier_log_bound(const IntersectingColoring& coloring);

/// sum over BFS layers B_i of |B_i| log2 |B_i|.
double bfs_layer_bound(const Graph& g);

struct BoundReport {
    double cost_I = 0;
    double energy = 0;
    double log_linearizations = 0;   // of the exploration tree
    double barrier_bound = 0;        // sum log2(c_i!)
    double bfs_layer_bound = 0;
    std::size_t forward_edges = 0;
    std::size_t colors = 0;
    Counters measured;
    std::uint64_t extract_comparisons = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Relative slack for comparing two sums of logarithms that may be equal in
/// exact arithmetic (e.g. a star, where both sides are log2((n-1)!)).
inline constexpr double kLogSumTolerance = 1e-9;

BoundReport bound_report(const DijkstraRun& run, const Graph& g, const WeightArena& arena);

}  // namespace uopt
