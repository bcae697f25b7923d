#include "uopt/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uopt/errors.hpp"

namespace uopt {

namespace {

// Range add, range max, leftmost argmax.
class MaxAddTree {
public:
    explicit MaxAddTree(std::size_t n) : n_(std::max<std::size_t>(n, 1)), max_(4 * n_, 0), lazy_(4 * n_, 0) {}

    void add(std::size_t l, std::size_t r, long long d) { add(1, 0, n_ - 1, l, r, d); }
    long long max(std::size_t l, std::size_t r) const { return max(1, 0, n_ - 1, l, r); }
    long long global_max() const { return max_[1]; }
    std::size_t leftmost_argmax() const {
        std::size_t node = 1, lo = 0, hi = n_ - 1;
        long long target = max_[1];
        long long acc = 0;
        while (lo < hi) {
            acc += lazy_[node];
            std::size_t mid = (lo + hi) / 2;
            if (max_[2 * node] + acc == target) {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        return lo;
    }

private:
    void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r, long long d) {
        if (r < lo || hi < l) return;
        if (l <= lo && hi <= r) {
            max_[node] += d;
            lazy_[node] += d;
            return;
        }
        std::size_t mid = (lo + hi) / 2;
        add(2 * node, lo, mid, l, r, d);
        add(2 * node + 1, mid + 1, hi, l, r, d);
        max_[node] = std::max(max_[2 * node], max_[2 * node + 1]) + lazy_[node];
    }

    long long max(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r) const {
        if (r < lo || hi < l) return std::numeric_limits<long long>::min() / 2;
        if (l <= lo && hi <= r) return max_[node];
        std::size_t mid = (lo + hi) / 2;
        return std::max(max(2 * node, lo, mid, l, r), max(2 * node + 1, mid + 1, hi, l, r)) + lazy_[node];
    }

    std::size_t n_;
    std::vector<long long> max_;
    std::vector<long long> lazy_;
};

// Point assign, leftmost index in a prefix whose value is >= a threshold.
class PrefixMaxTree {
public:
    static constexpr std::int64_t kDead = std::numeric_limits<std::int64_t>::min();

    explicit PrefixMaxTree(std::size_t n) : size_(1) {
        while (size_ < std::max<std::size_t>(n, 1)) size_ *= 2;
        t_.assign(2 * size_, kDead);
    }

    void set(std::size_t i, std::int64_t v) {
        i += size_;
        t_[i] = v;
        for (i /= 2; i >= 1; i /= 2) t_[i] = std::max(t_[2 * i], t_[2 * i + 1]);
    }

    /// Leftmost i < limit with value >= x, or npos.
    std::size_t find(std::size_t limit, std::int64_t x) const { return find(1, 0, size_, limit, x); }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

private:
    std::size_t find(std::size_t node, std::size_t lo, std::size_t hi, std::size_t limit, std::int64_t x) const {
        if (lo >= limit || t_[node] < x) return npos;
        if (hi - lo == 1) return lo;
        std::size_t mid = (lo + hi) / 2;
        std::size_t left = find(2 * node, lo, mid, limit, x);
        if (left != npos) return left;
        return find(2 * node + 1, mid, hi, limit, x);
    }

    std::size_t size_;
    std::vector<std::int64_t> t_;
};

struct Compressed {
    std::vector<std::int64_t> times;
    std::size_t index(std::int64_t t) const {
        return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
    }
};

Compressed compress(const IntervalSet& iv) {
    Compressed c;
    c.times.reserve(2 * iv.size());
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv.start[i] > iv.end[i]) throw ContractViolation("interval ends before it starts");
        c.times.push_back(iv.start[i]);
        c.times.push_back(iv.end[i]);
    }
    std::sort(c.times.begin(), c.times.end());
    c.times.erase(std::unique(c.times.begin(), c.times.end()), c.times.end());
    return c;
}

double log2_factorial(std::size_t c) { return std::lgamma(static_cast<double>(c) + 1.0) / std::log(2.0); }

double xlog2x(std::size_t c) { return c == 0 ? 0.0 : static_cast<double>(c) * std::log2(static_cast<double>(c)); }

}  // namespace

std::vector<std::size_t> working_sets(const IntervalSet& iv) {
    const std::size_t n = iv.size();
    std::vector<std::size_t> out(n, 0);
    if (n == 0) return out;
    Compressed c = compress(iv);
    MaxAddTree tree(c.times.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return iv.start[a] > iv.start[b]; });
    // Sweep starts from the latest: when x is queried, exactly the intervals
    // starting no earlier than x have been added.
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && iv.start[order[j]] == iv.start[order[i]]) {
            tree.add(c.index(iv.start[order[j]]), c.index(iv.end[order[j]]), 1);
            ++j;
        }
        for (std::size_t k = i; k < j; ++k) {
            std::size_t x = order[k];
            out[x] = static_cast<std::size_t>(tree.max(c.index(iv.start[x]), c.index(iv.end[x])));
        }
        i = j;
    }
    return out;
}

double cost(const IntervalSet& iv) {
    double sum = 0;
    for (std::size_t w : working_sets(iv)) sum += std::log2(static_cast<double>(w));
    return sum;
}

IntersectingColoring greedy_coloring(const IntervalSet& iv) {
    const std::size_t n = iv.size();
    IntersectingColoring out;
    out.color.assign(n, 0);
    if (n == 0) return out;
    Compressed c = compress(iv);
    MaxAddTree overlap(c.times.size());
    std::vector<std::size_t> by_start(n);
    std::iota(by_start.begin(), by_start.end(), 0);
    std::sort(by_start.begin(), by_start.end(), [&](std::size_t a, std::size_t b) { return iv.start[a] < iv.start[b]; });
    std::vector<std::int64_t> sorted_starts(n);
    PrefixMaxTree ends(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t x = by_start[p];
        sorted_starts[p] = iv.start[x];
        ends.set(p, iv.end[x]);
        overlap.add(c.index(iv.start[x]), c.index(iv.end[x]), 1);
    }

    struct Class {
        std::vector<std::size_t> members;
        std::int64_t witness;
    };
    std::vector<Class> classes;
    std::size_t alive = n;
    while (alive > 0) {
        std::int64_t t = c.times[overlap.leftmost_argmax()];
        auto limit = static_cast<std::size_t>(std::upper_bound(sorted_starts.begin(), sorted_starts.end(), t) -
                                              sorted_starts.begin());
        Class cls{{}, std::numeric_limits<std::int64_t>::min()};
        for (std::size_t p; (p = ends.find(limit, t)) != PrefixMaxTree::npos;) {
            std::size_t x = by_start[p];
            ends.set(p, PrefixMaxTree::kDead);
            overlap.add(c.index(iv.start[x]), c.index(iv.end[x]), -1);
            cls.members.push_back(x);
            cls.witness = std::max(cls.witness, iv.start[x]);
        }
        if (cls.members.empty()) throw InvariantViolation("greedy coloring found an empty class");
        alive -= cls.members.size();
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) { return a.witness < b.witness; });
    for (std::uint32_t k = 0; k < classes.size(); ++k) {
        for (std::size_t x : classes[k].members) out.color[x] = k;
        out.class_size.push_back(classes[k].members.size());
        out.witness.push_back(classes[k].witness);
    }
    return out;
}

double energy(const IntersectingColoring& coloring) {
    double e = 0;
    for (std::size_t c : coloring.class_size) e += xlog2x(c);
    return 2 * e;
}

bool is_intersecting(const IntersectingColoring& coloring, const IntervalSet& iv) {
    if (coloring.color.size() != iv.size()) return false;
    std::vector<std::size_t> count(coloring.class_size.size(), 0);
    for (std::size_t x = 0; x < iv.size(); ++x) {
        std::uint32_t k = coloring.color[x];
        if (k >= count.size()) return false;
        ++count[k];
        std::int64_t t = coloring.witness[k];
        if (t < iv.start[x] || t > iv.end[x]) return false;
    }
    return count == coloring.class_size;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> verify_barrier_sequence(const IntersectingColoring& coloring,
                                                                              const SpanningTree& tree) {
    if (coloring.color.size() != tree.size()) throw ContractViolation("coloring and tree sizes differ");
    // Parents strictly before children in color order; by transitivity no
    // vertex then has an ancestor in its own or a later class.
    for (std::uint32_t v = 0; v < tree.size(); ++v) {
        std::uint32_t p = tree.parent[v];
        if (p == kNoVertex) continue;
        if (coloring.color[p] >= coloring.color[v]) return std::make_pair(v, p);
    }
    return std::nullopt;
}

double tree_log_linearizations(const SpanningTree& tree) {
    // n! / prod |T(v)|, with the factors 1..n and the subtree sizes cancelled
    // as integers first so that exact cases (paths) come out exactly zero.
    auto order = tree.preorder();
    std::vector<std::size_t> sub(tree.size(), 1);
    std::vector<std::int64_t> exponent(order.size() + 1, 0);
    for (std::size_t i = 1; i <= order.size(); ++i) ++exponent[i];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint32_t v = *it;
        --exponent[sub[v]];
        if (tree.parent[v] != kNoVertex) sub[tree.parent[v]] += sub[v];
    }
    double s = 0;
    for (std::size_t i = 2; i < exponent.size(); ++i)
        if (exponent[i] != 0) s += static_cast<double>(exponent[i]) * std::log2(static_cast<double>(i));
    return s;
}

double barrier_log_bound(const IntersectingColoring& coloring) {
    double s = 0;
    for (std::size_t c : coloring.class_size) s += log2_factorial(c);
    return s;
}

double bfs_layer_bound(const Graph& g) {
    std::vector<std::uint32_t> depth(g.n(), kNoVertex);
    std::vector<std::uint32_t> queue{g.source()};
    depth[g.source()] = 0;
    std::vector<std::size_t> layer_size{1};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t u = queue[head];
        for (std::uint32_t a : g.out(u)) {
            std::uint32_t v = g.arc(a).to;
            if (depth[v] != kNoVertex) continue;
            depth[v] = depth[u] + 1;
            if (depth[v] >= layer_size.size()) layer_size.push_back(0);
            ++layer_size[depth[v]];
            queue.push_back(v);
        }
    }
    double s = 0;
    for (std::size_t b : layer_size) s += xlog2x(b);
    return s;
}

BoundReport bound_report(const DijkstraRun& run, const Graph& g, const WeightArena& arena) {
    BoundReport r;
    r.cost_I = cost(run.trace);
    IntersectingColoring col = greedy_coloring(run.trace);
    r.energy = energy(col);
    r.colors = col.class_size.size();
    r.log_linearizations = tree_log_linearizations(run.explore);
    r.barrier_bound = barrier_log_bound(col);
    r.bfs_layer_bound = bfs_layer_bound(g);
    r.forward_edges = forward_edges(g, arena, run.dist);
    r.measured = run.counters;
    r.extract_comparisons = run.extract_comparisons;

    if (r.energy < r.cost_I) r.violations.push_back("energy is below cost(I)");
    if (!is_intersecting(col, run.trace)) r.violations.push_back("greedy coloring is not intersecting");
    if (auto bad = verify_barrier_sequence(col, run.explore))
        r.violations.push_back("vertex " + std::to_string(bad->second) + " is an ancestor of " +
                               std::to_string(bad->first) + " in the same or an earlier barrier");
    const double tol = kLogSumTolerance * std::max(1.0, r.log_linearizations);
    if (r.barrier_bound > r.log_linearizations + tol)
        r.violations.push_back("sum log2(c_i!) exceeds log2 Linearizations(T_explore)");
    // c log c <= 2 log c! for every c >= 1, so E <= 4 sum log2(c_i!).
    if (r.energy > 4 * r.barrier_bound + kLogSumTolerance * std::max(1.0, r.energy))
        r.violations.push_back("energy exceeds 4 sum log2(c_i!)");
    return r;
}

}  // namespace uopt
