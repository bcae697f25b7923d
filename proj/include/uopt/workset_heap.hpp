#pragma once

// Priority queue with the working-set property: ExtractMin of x costs
// O(1 + log |W_x|) amortized comparisons, Insert and DecreaseKey O(1).
//
// Elements live in Fibonacci heaps H_0, H_1, ... with |H_r| <= 2^(2^r).
// Older elements sit in higher ranks. U maps insertion-time spans to heaps
// and M keeps the per-rank minima.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uopt/fibonacci_heap.hpp"
#include "uopt/interval_map.hpp"
#include "uopt/min_keeper.hpp"
#include "uopt/weights.hpp"

namespace uopt {

struct WsItem {
    PriorityKey key;
    std::uint64_t time = 0;
};

class WsItemOrder {
public:
    explicit WsItemOrder(KeyOrder keys) : keys_(keys) {}
    int operator()(const WsItem& a, const WsItem& b) const { return keys_(a.key, b.key); }
    int audit(const WsItem& a, const WsItem& b) const { return keys_.audit(a.key, b.key); }

private:
    KeyOrder keys_;
};

struct WorkSetOptions {
    /// Check heap-level invariants after every public operation.
    bool check_invariants = false;
    /// With checks on, also run the element-level scan every this many ops.
    std::uint64_t deep_check_period = 4096;
};

class WorkSetHeap {
public:
    struct Handle {
        NodeHandle node;
        std::uint64_t time = 0;
    };

    static constexpr std::uint32_t kNoHeap = 0xffffffffu;

    explicit WorkSetHeap(KeyOrder order, WorkSetOptions options = {});

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }

    Handle insert(PriorityKey key);
    const PriorityKey& find_min() const;
    PriorityKey extract_min();
    void decrease_key(Handle h, PriorityKey key);

    /// Size cap of rank r, saturating at UINT64_MAX.
    static std::uint64_t cap(std::size_t r);

    /// |H_r| for every rank slot, including empty ones.
    std::vector<std::size_t> rank_sizes() const;
    /// Rank a handle currently lives in, found through U.
    std::optional<std::size_t> rank_of(const Handle& h) const;
    /// Rank the last extract_min took its element from.
    std::size_t last_extract_rank() const { return last_rank_; }

    /// Returns a description of the first broken invariant, or nullopt.
    /// `deep` adds the element-level scan of every inner heap.
    std::optional<std::string> check_invariants(bool deep) const;

private:
    using Inner = FibonacciHeap<WsItem, WsItemOrder>;
    struct Slot {
        Inner heap;
        std::int64_t start = 0;
        std::int64_t end = 0;
        std::size_t rank = 0;
        bool used = false;
    };

    std::uint32_t new_heap(std::int64_t start, std::int64_t end);
    void free_heap(std::uint32_t id);
    void place(std::size_t r, std::uint32_t id);
    std::size_t heap_size(std::size_t r) const;
    PriorityKey rank_min(std::size_t r) const;
    void meld_into(std::uint32_t older, std::uint32_t newer, std::uint32_t dst);
    std::uint32_t promotion_step(std::size_t r, std::uint32_t carry);
    void refresh_prefix(std::size_t len);
    void restore_top();
    void after_op();

    KeyOrder order_;
    WorkSetOptions options_;
    std::shared_ptr<FibNodePool<WsItem>> pool_;
    std::vector<Slot> heaps_;
    std::vector<std::uint32_t> free_ids_;
    std::vector<std::uint32_t> ranks_;
    IntervalMap<std::uint32_t> u_;
    MinKeeper<PriorityKey, KeyOrder> m_;
    std::uint64_t next_time_ = 0;
    std::size_t size_ = 0;
    std::size_t last_rank_ = 0;
    std::uint64_t ops_ = 0;
    std::vector<PriorityKey> scratch_;
};

}  // namespace uopt
