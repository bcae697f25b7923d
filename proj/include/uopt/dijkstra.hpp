#pragma once

// Dijkstra's algorithm over any addressable priority queue, with lazy
// insertion and a DecreaseKey call on every relaxation. Records the
// linearization, both spanning trees and the Insert/ExtractMin interval trace.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uopt/baseline_heaps.hpp"
#include "uopt/fibonacci_heap.hpp"
#include "uopt/graph.hpp"
#include "uopt/weights.hpp"
#include "uopt/workset_heap.hpp"

namespace uopt {

enum class HeapKind { workset, fibonacci, binary, pairing };

HeapKind parse_heap_kind(std::string_view name);
std::string_view heap_kind_name(HeapKind kind);

/// Per-vertex closed interval [start, end] of heap event times.
struct IntervalSet {
    std::vector<std::int64_t> start;
    std::vector<std::int64_t> end;

    std::size_t size() const { return start.size(); }
};

struct DijkstraRun {
    std::vector<std::uint32_t> linearization;
    std::vector<WeightHandle> dist;
    SpanningTree sssp;
    SpanningTree explore;
    IntervalSet trace;
    Counters counters;                        // spent by the whole run
    std::uint64_t extract_comparisons = 0;    // spent inside ExtractMin
    std::uint64_t decrease_calls = 0;
};

/// Runs Dijkstra with queue `q` (empty on entry). `weight(arc)` yields the
/// handle of an arc's weight; it is called once per relaxation.
template <class Queue, class WeightFn>
DijkstraRun dijkstra_with(const Graph& g, WeightArena& arena, Queue& q, WeightFn&& weight) {
    using Handle = decltype(q.insert(PriorityKey{}));
    const std::uint32_t n = g.n();
    const Counters before = arena.counters();
    DijkstraRun run;
    run.dist.assign(n, WeightHandle::infinity());
    run.sssp = {SpanningTree::Role::sssp, g.source(), std::vector<std::uint32_t>(n, kNoVertex),
                std::vector<std::uint32_t>(n, kNoVertex)};
    run.explore = {SpanningTree::Role::exploration, g.source(), std::vector<std::uint32_t>(n, kNoVertex),
                   std::vector<std::uint32_t>(n, kNoVertex)};
    run.trace.start.assign(n, -1);
    run.trace.end.assign(n, -1);
    run.linearization.reserve(n);

    std::vector<Handle> handle(n);
    std::vector<char> state(n, 0);  // 0 unseen, 1 in heap, 2 finalized
    std::int64_t now = 0;

    run.dist[g.source()] = arena.zero();
    handle[g.source()] = q.insert(PriorityKey{run.dist[g.source()], g.source()});
    state[g.source()] = 1;
    run.trace.start[g.source()] = now++;

    while (!q.empty()) {
        const auto c0 = arena.counters().comparisons;
        const PriorityKey top = q.extract_min();
        run.extract_comparisons += arena.counters().comparisons - c0;
        const std::uint32_t u = top.vertex;
        state[u] = 2;
        run.trace.end[u] = now++;
        run.linearization.push_back(u);
        for (std::uint32_t a : g.out(u)) {
            const std::uint32_t v = g.arc(a).to;
            if (state[v] == 2) continue;
            if (state[v] == 0) {
                handle[v] = q.insert(PriorityKey{WeightHandle::infinity(), v});
                state[v] = 1;
                run.trace.start[v] = now++;
                run.explore.parent[v] = u;
                run.explore.parent_arc[v] = a;
            }
            WeightHandle cand = arena.add(run.dist[u], weight(a));
            if (arena.compare(cand, run.dist[v]) < 0) {
                run.dist[v] = cand;
                run.sssp.parent[v] = u;
                run.sssp.parent_arc[v] = a;
            }
            q.decrease_key(handle[v], PriorityKey{run.dist[v], v});
            ++run.decrease_calls;
        }
    }
    run.counters = arena.counters() - before;
    return run;
}

/// Dijkstra with a fresh queue of the given kind over the graph's own weights.
DijkstraRun run_dijkstra(const Graph& g, WeightArena& arena, HeapKind kind, WorkSetOptions options = {});

/// Audit: checks with uncounted comparisons that the linearization is in
/// nondecreasing distance order and covers every vertex once.
bool linearization_sorted(const DijkstraRun& run, const WeightArena& arena);

/// One-line-per-item report: counters, tree parents, linearization.
std::string format_run(const DijkstraRun& run);

}  // namespace uopt
