#pragma once

// Merging distance-sorted vertex lists and turning a shortest-path tree into
// the full distance ordering with few comparisons.

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "uopt/graph.hpp"
#include "uopt/weights.hpp"

namespace uopt {

/// Compares vertex distances; identical handles are equal for free.
inline int compare_dist(WeightArena& arena, std::span<const WeightHandle> dist, std::uint32_t x, std::uint32_t y) {
    if (dist[x] == dist[y]) return 0;
    return arena.compare(dist[x], dist[y]);
}

/// Hwang-Lin binary merge of two lists sorted by `dist`. Equal distances put
/// elements of `a` first. Works from the tail: with m <= n remaining, probe
/// the long list 2^t from its end, t = floor(log2(n/m)), and either emit that
/// whole block or binary-insert the short list's last element with t more
/// comparisons.
template <class Out, class A, class B>
void hwang_lin_merge_into(Out& out, const A& a, const B& b, std::span<const WeightHandle> dist, WeightArena& arena) {
    const std::size_t total = a.size() + b.size();
    std::vector<std::uint32_t> rev;  // built from the back
    rev.reserve(total);
    std::size_t ma = a.size(), mb = b.size();
    while (ma > 0 && mb > 0) {
        const bool a_short = ma <= mb;
        auto at_short = [&](std::size_t i) { return a_short ? a[i] : b[i]; };
        auto at_long = [&](std::size_t i) { return a_short ? b[i] : a[i]; };
        std::size_t& m = a_short ? ma : mb;
        std::size_t& n = a_short ? mb : ma;
        // x from the short list goes before y from the long list.
        auto before = [&](std::uint32_t x, std::uint32_t y) {
            int c = compare_dist(arena, dist, x, y);
            return c < 0 || (c == 0 && a_short);
        };
        unsigned t = 0;
        while ((m << (t + 1)) <= n) ++t;
        const std::size_t block = std::size_t{1} << t;
        const std::uint32_t x = at_short(m - 1);
        if (before(x, at_long(n - block))) {
            for (std::size_t i = n; i > n - block; --i) rev.push_back(at_long(i - 1));
            n -= block;
            continue;
        }
        // at_long(n - block) precedes x; find the first j in (n - block, n]
        // whose element x precedes, with j == n meaning none.
        std::size_t lo = n - block + 1, hi = n;
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (before(x, at_long(mid))) hi = mid;
            else lo = mid + 1;
        }
        for (std::size_t i = n; i > lo; --i) rev.push_back(at_long(i - 1));
        rev.push_back(x);
        n = lo;
        --m;
    }
    for (std::size_t i = ma; i > 0; --i) rev.push_back(a[i - 1]);
    for (std::size_t i = mb; i > 0; --i) rev.push_back(b[i - 1]);
    out.assign(rev.rbegin(), rev.rend());
}

std::vector<std::uint32_t> hwang_lin_merge(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                           std::span<const WeightHandle> dist, WeightArena& arena);

/// Distance ordering of all tree vertices from a shortest-path tree and its
/// distances: each subtree's list is its root followed by the merge of its
/// children's lists.
std::vector<std::uint32_t> tree_dp_linearize(const SpanningTree& tree, std::span<const WeightHandle> dist,
                                             WeightArena& arena);

}  // namespace uopt
