#include "uopt/dijkstra.hpp"

#include <sstream>

#include "uopt/errors.hpp"

namespace uopt {

HeapKind parse_heap_kind(std::string_view name) {
    if (name == "workset") return HeapKind::workset;
    if (name == "fibonacci") return HeapKind::fibonacci;
    if (name == "binary") return HeapKind::binary;
    if (name == "pairing") return HeapKind::pairing;
    throw UsageError("unknown heap kind '" + std::string(name) + "'");
}

std::string_view heap_kind_name(HeapKind kind) {
    switch (kind) {
        case HeapKind::workset: return "workset";
        case HeapKind::fibonacci: return "fibonacci";
        case HeapKind::binary: return "binary";
        case HeapKind::pairing: return "pairing";
    }
    return "?";
}

DijkstraRun run_dijkstra(const Graph& g, WeightArena& arena, HeapKind kind, WorkSetOptions options) {
    auto weight = [&g](std::uint32_t a) { return g.arc(a).weight; };
    KeyOrder order(arena);
    switch (kind) {
        case HeapKind::workset: {
            WorkSetHeap q(order, options);
            return dijkstra_with(g, arena, q, weight);
        }
        case HeapKind::fibonacci: {
            FibonacciHeap<PriorityKey, KeyOrder> q(order);
            return dijkstra_with(g, arena, q, weight);
        }
        case HeapKind::binary: {
            BinaryHeap<PriorityKey, KeyOrder> q(order);
            return dijkstra_with(g, arena, q, weight);
        }
        case HeapKind::pairing: {
            PairingHeap<PriorityKey, KeyOrder> q(order);
            return dijkstra_with(g, arena, q, weight);
        }
    }
    throw UsageError("unknown heap kind");
}

bool linearization_sorted(const DijkstraRun& run, const WeightArena& arena) {
    const auto& lin = run.linearization;
    if (lin.size() != run.dist.size()) return false;
    std::vector<char> seen(lin.size(), 0);
    for (std::size_t i = 0; i < lin.size(); ++i) {
        if (lin[i] >= seen.size() || seen[lin[i]]) return false;
        seen[lin[i]] = 1;
        if (i > 0 && arena.audit_compare(run.dist[lin[i - 1]], run.dist[lin[i]]) > 0) return false;
    }
    return true;
}

std::string format_run(const DijkstraRun& run) {
    std::ostringstream os;
    os << "comparisons " << run.counters.comparisons << '\n';
    os << "additions " << run.counters.additions << '\n';
    os << "extract_comparisons " << run.extract_comparisons << '\n';
    os << "decrease_calls " << run.decrease_calls << '\n';
    for (std::size_t v = 0; v < run.sssp.parent.size(); ++v) {
        if (run.sssp.parent[v] == kNoVertex) continue;
        os << "sssp " << run.sssp.parent[v] << ' ' << v << '\n';
    }
    for (std::size_t v = 0; v < run.explore.parent.size(); ++v) {
        if (run.explore.parent[v] == kNoVertex) continue;
        os << "explore " << run.explore.parent[v] << ' ' << v << '\n';
    }
    for (auto v : run.linearization) os << "order " << v << '\n';
    return os.str();
}

}  // namespace uopt
