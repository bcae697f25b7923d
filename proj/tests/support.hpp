#pragma once

// Shared test helpers: keys backed by a fresh arena, and a sorted-set oracle
// for priority queues.

#include <cstdint>
#include <iterator>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "uopt/weights.hpp"

namespace testing_support {

using uopt::ExactValue;
using uopt::PriorityKey;
using uopt::WeightArena;
using uopt::WeightHandle;

/// Interns integer weights and remembers their raw values for the oracle.
class Keys {
public:
    explicit Keys(uopt::Masking m = uopt::Masking::off) : arena(m) {}

    PriorityKey make(std::int64_t value, std::uint32_t vertex) {
        return {arena.intern(ExactValue::from_integer(value)), vertex};
    }
    std::int64_t raw(const PriorityKey& k) const {
        auto v = uopt::AuditView(arena).value(k.weight).scaled() / ExactValue::kScale;
        return static_cast<std::int64_t>(v);
    }
    uopt::KeyOrder order() { return uopt::KeyOrder(arena); }

    WeightArena arena;
};

/// Multiset of (value, vertex) pairs; the reference priority queue.
class SortedOracle {
public:
    void insert(std::int64_t v, std::uint32_t id) { set_.insert({v, id}); }
    void erase(std::int64_t v, std::uint32_t id) { set_.erase({v, id}); }
    std::pair<std::int64_t, std::uint32_t> pop() {
        auto it = set_.begin();
        auto out = *it;
        set_.erase(it);
        return out;
    }
    std::pair<std::int64_t, std::uint32_t> top() const { return *set_.begin(); }
    bool empty() const { return set_.empty(); }
    std::size_t size() const { return set_.size(); }

private:
    std::set<std::pair<std::int64_t, std::uint32_t>> set_;
};

}  // namespace testing_support

namespace testing_support {

/// Closed interval [start, end] of event times for one element.
struct Span {
    std::int64_t start;
    std::int64_t end;
};

/// |W_x| straight from the definition: the largest number, over t in x, of
/// intervals y with start_x <= start_y <= t <= end_y. Quadratic per element.
inline std::vector<std::size_t> brute_working_sets(const std::vector<Span>& spans) {
    std::vector<std::size_t> out(spans.size(), 0);
    for (std::size_t x = 0; x < spans.size(); ++x) {
        for (std::int64_t t = spans[x].start; t <= spans[x].end; ++t) {
            std::size_t c = 0;
            for (const auto& y : spans)
                if (spans[x].start <= y.start && y.start <= t && t <= y.end) ++c;
            out[x] = std::max(out[x], c);
        }
    }
    return out;
}

}  // namespace testing_support

#include "uopt/graph.hpp"

namespace testing_support {

inline __int128 raw_value(const uopt::WeightArena& arena, uopt::WeightHandle h) {
    return uopt::AuditView(arena).value(h).scaled();
}

/// Bellman-Ford on raw scaled values; -1 marks unreachable.
inline std::vector<__int128> bellman_ford(const uopt::Graph& g, const uopt::WeightArena& arena) {
    std::vector<__int128> d(g.n(), -1);
    d[g.source()] = 0;
    for (std::uint32_t round = 0; round < g.n(); ++round) {
        bool changed = false;
        for (const auto& e : g.arcs()) {
            if (d[e.from] < 0) continue;
            __int128 c = d[e.from] + raw_value(arena, e.weight);
            if (d[e.to] < 0 || c < d[e.to]) {
                d[e.to] = c;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return d;
}

/// Linearization check from the definition: every vertex appears once and no
/// vertex comes before its tree parent.
inline bool respects_tree(const std::vector<std::uint32_t>& order, const uopt::SpanningTree& t) {
    if (order.size() != t.size()) return false;
    std::vector<std::size_t> pos(t.size(), SIZE_MAX);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= t.size() || pos[order[i]] != SIZE_MAX) return false;
        pos[order[i]] = i;
    }
    for (std::uint32_t v = 0; v < t.size(); ++v)
        if (t.parent[v] != uopt::kNoVertex && pos[t.parent[v]] > pos[v]) return false;
    return true;
}

}  // namespace testing_support
