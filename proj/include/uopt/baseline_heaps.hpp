#pragma once

// Addressable binary and pairing heaps. They are only used as Dijkstra
// baselines, to measure what a heap without the working-set property costs.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "uopt/errors.hpp"

namespace uopt {

template <class T, class Order>
class BinaryHeap {
public:
    using Handle = std::uint32_t;
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    explicit BinaryHeap(Order order) : order_(std::move(order)) {}

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    Handle insert(T value) {
        Handle h = static_cast<Handle>(values_.size());
        values_.push_back(std::move(value));
        pos_.push_back(static_cast<std::uint32_t>(heap_.size()));
        heap_.push_back(h);
        sift_up(pos_[h]);
        return h;
    }

    const T& find_min() const {
        if (empty()) throw EmptyHeapError();
        return values_[heap_.front()];
    }

    T extract_min() {
        if (empty()) throw EmptyHeapError();
        Handle top = heap_.front();
        Handle last = heap_.back();
        heap_.pop_back();
        pos_[top] = npos;
        if (!heap_.empty()) {
            heap_[0] = last;
            pos_[last] = 0;
            sift_down(0);
        }
        return std::move(values_[top]);
    }

    void decrease_key(Handle h, T value) {
        if (h >= pos_.size() || pos_[h] == npos) throw ContractViolation("stale heap handle");
        int rel = order_.audit(value, values_[h]);
        if (rel > 0) throw ContractViolation("decrease_key would increase the key");
        values_[h] = std::move(value);
        if (rel < 0) sift_up(pos_[h]);
    }

private:
    bool less(std::uint32_t i, std::uint32_t j) { return order_(values_[heap_[i]], values_[heap_[j]]) < 0; }

    void place(std::uint32_t i, Handle h) {
        heap_[i] = h;
        pos_[h] = i;
    }

    void sift_up(std::uint32_t i) {
        while (i > 0) {
            std::uint32_t p = (i - 1) / 2;
            if (!less(i, p)) break;
            Handle a = heap_[i];
            place(i, heap_[p]);
            place(p, a);
            i = p;
        }
    }

    void sift_down(std::uint32_t i) {
        const auto n = static_cast<std::uint32_t>(heap_.size());
        for (;;) {
            std::uint32_t l = 2 * i + 1;
            if (l >= n) return;
            std::uint32_t best = l;
            if (l + 1 < n && less(l + 1, l)) best = l + 1;
            if (!less(best, i)) return;
            Handle a = heap_[i];
            place(i, heap_[best]);
            place(best, a);
            i = best;
        }
    }

    Order order_;
    std::vector<T> values_;
    std::vector<std::uint32_t> pos_;
    std::vector<Handle> heap_;
};

/// Two-pass pairing heap.
template <class T, class Order>
class PairingHeap {
public:
    using Handle = std::uint32_t;
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    explicit PairingHeap(Order order) : order_(std::move(order)) {}

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }

    Handle insert(T value) {
        Handle h = static_cast<Handle>(nodes_.size());
        nodes_.push_back(Node{std::move(value)});
        root_ = root_ == npos ? h : join(root_, h);
        ++size_;
        return h;
    }

    const T& find_min() const {
        if (empty()) throw EmptyHeapError();
        return nodes_[root_].value;
    }

    T extract_min() {
        if (empty()) throw EmptyHeapError();
        Handle old = root_;
        nodes_[old].live = false;
        root_ = combine_children(old);
        --size_;
        return std::move(nodes_[old].value);
    }

    void decrease_key(Handle h, T value) {
        if (h >= nodes_.size() || !nodes_[h].live) throw ContractViolation("stale heap handle");
        int rel = order_.audit(value, nodes_[h].value);
        if (rel > 0) throw ContractViolation("decrease_key would increase the key");
        nodes_[h].value = std::move(value);
        if (rel == 0 || h == root_) return;
        detach(h);
        root_ = join(root_, h);
    }

private:
    struct Node {
        T value;
        std::uint32_t child = npos;
        std::uint32_t next = npos;
        std::uint32_t prev = npos;  // parent when this is the first child
        bool live = true;
    };

    Handle join(Handle a, Handle b) {
        if (order_(nodes_[b].value, nodes_[a].value) < 0) std::swap(a, b);
        // b becomes the first child of a.
        nodes_[b].prev = a;
        nodes_[b].next = nodes_[a].child;
        if (nodes_[a].child != npos) nodes_[nodes_[a].child].prev = b;
        nodes_[a].child = b;
        nodes_[a].next = nodes_[a].prev = npos;
        return a;
    }

    void detach(Handle h) {
        Handle p = nodes_[h].prev;
        Handle n = nodes_[h].next;
        if (nodes_[p].child == h) {
            nodes_[p].child = n;
        } else {
            nodes_[p].next = n;
        }
        if (n != npos) nodes_[n].prev = p;
        nodes_[h].next = nodes_[h].prev = npos;
    }

    Handle combine_children(Handle parent) {
        Handle c = nodes_[parent].child;
        if (c == npos) return npos;
        std::vector<Handle> pairs;
        while (c != npos) {
            Handle a = c;
            Handle b = nodes_[a].next;
            c = b == npos ? npos : nodes_[b].next;
            nodes_[a].next = nodes_[a].prev = npos;
            if (b != npos) {
                nodes_[b].next = nodes_[b].prev = npos;
                pairs.push_back(join(a, b));
            } else {
                pairs.push_back(a);
            }
        }
        Handle r = pairs.back();
        for (std::size_t i = pairs.size() - 1; i-- > 0;) r = join(pairs[i], r);
        return r;
    }

    Order order_;
    std::vector<Node> nodes_;
    Handle root_ = npos;
    std::size_t size_ = 0;
};

}  // namespace uopt
