#pragma once

// Fibonacci heap over a node pool that can be shared between heaps, so that
// melding is O(1) and node handles survive any number of melds.

#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "uopt/errors.hpp"

namespace uopt {

/// Identifies one live node. Becomes stale when the node is extracted.
struct NodeHandle {
    std::uint32_t index = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t generation = 0;

    bool operator==(const NodeHandle&) const = default;
};

template <class T>
class FibNodePool {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    struct Node {
        T value{};
        std::uint32_t parent = npos;
        std::uint32_t child = npos;
        std::uint32_t left = npos;
        std::uint32_t right = npos;
        std::uint32_t degree = 0;
        std::uint32_t generation = 0;
        bool mark = false;
        bool live = false;
    };

    std::uint32_t allocate(T value) {
        std::uint32_t i;
        if (!free_.empty()) {
            i = free_.back();
            free_.pop_back();
        } else {
            i = static_cast<std::uint32_t>(nodes_.size());
            nodes_.emplace_back();
        }
        Node& n = nodes_[i];
        std::uint32_t gen = n.generation + 1;
        n = Node{};
        n.value = std::move(value);
        n.generation = gen;
        n.live = true;
        n.left = n.right = i;
        return i;
    }

    void release(std::uint32_t i) {
        nodes_[i].live = false;
        free_.push_back(i);
    }

    bool live(NodeHandle h) const {
        return h.index < nodes_.size() && nodes_[h.index].live && nodes_[h.index].generation == h.generation;
    }

    Node& operator[](std::uint32_t i) { return nodes_[i]; }
    const Node& operator[](std::uint32_t i) const { return nodes_[i]; }

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
};

/// Min-heap ordered by `Order`, a three-way comparator with a counted
/// `operator()` and an uncounted `audit()` used only for precondition checks.
template <class T, class Order>
class FibonacciHeap {
public:
    using Pool = FibNodePool<T>;
    static constexpr std::uint32_t npos = Pool::npos;

    explicit FibonacciHeap(Order order) : FibonacciHeap(std::make_shared<Pool>(), std::move(order)) {}
    FibonacciHeap(std::shared_ptr<Pool> pool, Order order) : pool_(std::move(pool)), order_(std::move(order)) {}

    FibonacciHeap(const FibonacciHeap&) = delete;
    FibonacciHeap& operator=(const FibonacciHeap&) = delete;
    FibonacciHeap(FibonacciHeap&& o) noexcept
        : pool_(o.pool_), order_(o.order_), min_(std::exchange(o.min_, npos)), size_(std::exchange(o.size_, 0)) {}
    FibonacciHeap& operator=(FibonacciHeap&& o) noexcept {
        if (this != &o) {
            release_all();
            pool_ = o.pool_;
            order_ = o.order_;
            min_ = std::exchange(o.min_, npos);
            size_ = std::exchange(o.size_, 0);
        }
        return *this;
    }
    ~FibonacciHeap() { release_all(); }

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    const std::shared_ptr<Pool>& pool() const { return pool_; }

    NodeHandle insert(T value) {
        std::uint32_t i = pool_->allocate(std::move(value));
        add_root(i);
        ++size_;
        return {i, node(i).generation};
    }

    const T& find_min() const {
        if (empty()) throw EmptyHeapError();
        return node(min_).value;
    }

    NodeHandle min_handle() const {
        if (empty()) throw EmptyHeapError();
        return {min_, node(min_).generation};
    }

    T extract_min() {
        if (empty()) throw EmptyHeapError();
        std::uint32_t z = min_;
        // Children of z join the root list.
        std::uint32_t c = node(z).child;
        if (c != npos) {
            std::uint32_t x = c;
            do {
                node(x).parent = npos;
                node(x).mark = false;
                x = node(x).right;
            } while (x != c);
            splice(z, c);
            node(z).child = npos;
        }
        std::uint32_t next = node(z).right;
        unlink(z);
        --size_;
        if (next == z) {
            min_ = npos;
        } else {
            min_ = next;
            consolidate();
        }
        T out = std::move(node(z).value);
        pool_->release(z);
        return out;
    }

    /// Requires `value` to order at or below the current key.
    void decrease_key(NodeHandle h, T value) {
        if (!pool_->live(h)) throw ContractViolation("stale heap node handle");
        std::uint32_t x = h.index;
        int rel = order_.audit(value, node(x).value);
        if (rel > 0) throw ContractViolation("decrease_key would increase the key");
        node(x).value = std::move(value);
        if (rel == 0) return;
        std::uint32_t p = node(x).parent;
        if (p != npos && order_(node(x).value, node(p).value) < 0) {
            cut(x, p);
            cascading_cut(p);
        }
        if (x != min_ && order_(node(x).value, node(min_).value) < 0) min_ = x;
    }

    /// Moves every node of `other` into this heap; `other` is left empty.
    void meld(FibonacciHeap& other) {
        if (&other == this || other.empty()) return;
        if (other.pool_ != pool_) throw ContractViolation("meld across node pools");
        if (empty()) {
            min_ = other.min_;
        } else {
            std::uint32_t other_min = other.min_;
            splice(min_, other_min);
            if (order_(node(other_min).value, node(min_).value) < 0) min_ = other_min;
        }
        size_ += other.size_;
        other.min_ = npos;
        other.size_ = 0;
    }

    bool contains(NodeHandle h) const { return pool_->live(h); }
    const T& value(NodeHandle h) const {
        if (!pool_->live(h)) throw ContractViolation("stale heap node handle");
        return node(h.index).value;
    }

    template <class F>
    void for_each(F&& f) const {
        if (min_ != npos) visit_list(min_, f);
    }

    /// Full structural check with uncounted comparisons: heap order, parent
    /// links, and node count. Returns false on the first defect.
    bool validate() const {
        if (min_ == npos) return size_ == 0;
        std::size_t count = 0;
        bool ok = check_list(min_, npos, count);
        if (!ok || count != size_) return false;
        std::uint32_t r = min_;
        do {
            if (order_.audit(node(r).value, node(min_).value) < 0) return false;
            r = node(r).right;
        } while (r != min_);
        return true;
    }

private:
    typename Pool::Node& node(std::uint32_t i) { return (*pool_)[i]; }
    const typename Pool::Node& node(std::uint32_t i) const { return (*pool_)[i]; }

    void release_all() {
        if (min_ == npos || !pool_) return;
        std::vector<std::uint32_t> stack{min_};
        std::vector<std::uint32_t> all;
        while (!stack.empty()) {
            std::uint32_t start = stack.back();
            stack.pop_back();
            std::uint32_t x = start;
            do {
                all.push_back(x);
                if (node(x).child != npos) stack.push_back(node(x).child);
                x = node(x).right;
            } while (x != start);
        }
        for (std::uint32_t x : all) pool_->release(x);
        min_ = npos;
        size_ = 0;
    }

    // Joins the circular lists containing a and b.
    void splice(std::uint32_t a, std::uint32_t b) {
        std::uint32_t a_right = node(a).right;
        std::uint32_t b_left = node(b).left;
        node(a).right = b;
        node(b).left = a;
        node(b_left).right = a_right;
        node(a_right).left = b_left;
    }

    void unlink(std::uint32_t x) {
        node(node(x).left).right = node(x).right;
        node(node(x).right).left = node(x).left;
        node(x).left = node(x).right = x;
    }

    void add_root(std::uint32_t i) {
        node(i).parent = npos;
        node(i).left = node(i).right = i;
        if (min_ == npos) {
            min_ = i;
            return;
        }
        splice(min_, i);
        if (order_(node(i).value, node(min_).value) < 0) min_ = i;
    }

    void link(std::uint32_t child, std::uint32_t parent) {
        unlink(child);
        node(child).parent = parent;
        node(child).mark = false;
        if (node(parent).child == npos) {
            node(parent).child = child;
        } else {
            splice(node(parent).child, child);
        }
        ++node(parent).degree;
    }

    void consolidate() {
        std::vector<std::uint32_t> roots;
        std::uint32_t x = min_;
        do {
            roots.push_back(x);
            x = node(x).right;
        } while (x != min_);

        std::vector<std::uint32_t> by_degree;
        for (std::uint32_t r : roots) {
            std::uint32_t a = r;
            std::uint32_t d = node(a).degree;
            while (d < by_degree.size() && by_degree[d] != npos) {
                std::uint32_t b = by_degree[d];
                by_degree[d] = npos;
                if (order_(node(b).value, node(a).value) < 0) std::swap(a, b);
                link(b, a);
                d = node(a).degree;
            }
            if (d >= by_degree.size()) by_degree.resize(d + 1, npos);
            by_degree[d] = a;
        }

        min_ = npos;
        for (std::uint32_t r : by_degree) {
            if (r == npos) continue;
            if (min_ == npos || order_(node(r).value, node(min_).value) < 0) min_ = r;
        }
    }

    void cut(std::uint32_t x, std::uint32_t p) {
        if (node(p).child == x) node(p).child = (node(x).right == x) ? npos : node(x).right;
        unlink(x);
        --node(p).degree;
        node(x).parent = npos;
        node(x).mark = false;
        splice(min_, x);
    }

    void cascading_cut(std::uint32_t y) {
        for (std::uint32_t p = node(y).parent; p != npos; y = p, p = node(y).parent) {
            if (!node(y).mark) {
                node(y).mark = true;
                return;
            }
            cut(y, p);
        }
    }

    template <class F>
    void visit_list(std::uint32_t start, F& f) const {
        std::uint32_t x = start;
        do {
            f(NodeHandle{x, node(x).generation}, node(x).value);
            if (node(x).child != npos) visit_list(node(x).child, f);
            x = node(x).right;
        } while (x != start);
    }

    bool check_list(std::uint32_t start, std::uint32_t parent, std::size_t& count) const {
        std::uint32_t x = start;
        do {
            const auto& n = node(x);
            if (!n.live || n.parent != parent) return false;
            if (node(n.right).left != x) return false;
            if (parent != npos && order_.audit(n.value, node(parent).value) < 0) return false;
            ++count;
            if (n.child != npos && !check_list(n.child, x, count)) return false;
            x = n.right;
        } while (x != start);
        return true;
    }

    std::shared_ptr<Pool> pool_;
    Order order_;
    std::uint32_t min_ = npos;
    std::size_t size_ = 0;
};

}  // namespace uopt
