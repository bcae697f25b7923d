#include "uopt/workset_heap.hpp"

#include <cmath>

#include "uopt/errors.hpp"

namespace uopt {

namespace {

const PriorityKey kEmptyKey{WeightHandle::infinity(), 0xffffffffu};

}  // namespace

WorkSetHeap::WorkSetHeap(KeyOrder order, WorkSetOptions options)
    : order_(order), options_(options), pool_(std::make_shared<FibNodePool<WsItem>>()), m_(order) {
    ranks_.push_back(kNoHeap);
    scratch_.push_back(kEmptyKey);
    m_.change_prefix(scratch_);
}

std::uint64_t WorkSetHeap::cap(std::size_t r) {
    if (r >= 6) return UINT64_MAX;
    return std::uint64_t{1} << (std::uint64_t{1} << r);
}

std::uint32_t WorkSetHeap::new_heap(std::int64_t start, std::int64_t end) {
    std::uint32_t id;
    if (!free_ids_.empty()) {
        id = free_ids_.back();
        free_ids_.pop_back();
    } else {
        id = static_cast<std::uint32_t>(heaps_.size());
        heaps_.push_back(Slot{Inner(pool_, WsItemOrder(order_))});
    }
    Slot& s = heaps_[id];
    s.start = start;
    s.end = end;
    s.used = true;
    u_.set(start, end, id);
    return id;
}

void WorkSetHeap::free_heap(std::uint32_t id) {
    Slot& s = heaps_[id];
    u_.remove(s.start, s.end);
    s.used = false;
    free_ids_.push_back(id);
}

void WorkSetHeap::place(std::size_t r, std::uint32_t id) {
    ranks_[r] = id;
    if (id != kNoHeap) heaps_[id].rank = r;
}

std::size_t WorkSetHeap::heap_size(std::size_t r) const {
    return ranks_[r] == kNoHeap ? 0 : heaps_[ranks_[r]].heap.size();
}

PriorityKey WorkSetHeap::rank_min(std::size_t r) const {
    if (ranks_[r] == kNoHeap) return kEmptyKey;
    return heaps_[ranks_[r]].heap.find_min().key;
}

// Melds two heaps adjacent in time into `dst` (one of the two) and gives the
// result the union interval.
void WorkSetHeap::meld_into(std::uint32_t older, std::uint32_t newer, std::uint32_t dst) {
    std::uint32_t src = dst == older ? newer : older;
    std::int64_t start = heaps_[older].start;
    std::int64_t end = heaps_[newer].end;
    heaps_[dst].heap.meld(heaps_[src].heap);
    free_heap(src);
    u_.remove(heaps_[dst].start, heaps_[dst].end);
    heaps_[dst].start = start;
    heaps_[dst].end = end;
    u_.set(start, end, dst);
}

std::uint32_t WorkSetHeap::promotion_step(std::size_t r, std::uint32_t carry) {
    if (r == ranks_.size()) ranks_.push_back(kNoHeap);
    std::uint32_t cur = ranks_[r];
    if (cur == kNoHeap) {
        place(r, carry);
        return kNoHeap;
    }
    if (heaps_[cur].heap.size() + heaps_[carry].heap.size() <= cap(r)) {
        meld_into(cur, carry, cur);
        return kNoHeap;
    }
    place(r, carry);
    return cur;
}

void WorkSetHeap::refresh_prefix(std::size_t len) {
    scratch_.resize(len);
    for (std::size_t r = 0; r < len; ++r) scratch_[r] = rank_min(r);
    m_.change_prefix(scratch_);
}

// Melds the top rank down while it is empty or too small to justify itself,
// so that |H_R| + |H_{R-1}| >= 2^(2^(R-1)) holds afterwards.
void WorkSetHeap::restore_top() {
    while (ranks_.size() >= 2) {
        std::size_t top = ranks_.size() - 1;
        std::uint32_t hi = ranks_[top];
        if (hi != kNoHeap && !(top >= 2 && heap_size(top) + heap_size(top - 1) < cap(top - 1))) break;
        if (hi != kNoHeap) {
            std::uint32_t lo = ranks_[top - 1];
            if (lo == kNoHeap) {
                place(top - 1, hi);
            } else {
                meld_into(hi, lo, lo);
            }
        }
        ranks_[top] = kNoHeap;
        // M.Pop needs the last two entries equal: both get the merged minimum.
        scratch_.resize(top + 1);
        for (std::size_t r = 0; r < top; ++r) scratch_[r] = rank_min(r);
        scratch_[top] = scratch_[top - 1];
        m_.change_prefix(scratch_);
        m_.pop();
        ranks_.pop_back();
    }
}

WorkSetHeap::Handle WorkSetHeap::insert(PriorityKey key) {
    const auto t = static_cast<std::int64_t>(next_time_++);
    std::uint32_t carry = new_heap(t, t + 1);
    NodeHandle node = heaps_[carry].heap.insert(WsItem{key, static_cast<std::uint64_t>(t)});
    ++size_;
    std::size_t r = 0;
    while (carry != kNoHeap) carry = promotion_step(r++, carry);
    refresh_prefix(r);
    after_op();
    return {node, static_cast<std::uint64_t>(t)};
}

const PriorityKey& WorkSetHeap::find_min() const {
    if (empty()) throw EmptyHeapError();
    return heaps_[ranks_[m_.find_min()]].heap.find_min().key;
}

PriorityKey WorkSetHeap::extract_min() {
    if (empty()) throw EmptyHeapError();
    std::size_t r = m_.find_min();
    std::uint32_t id = ranks_[r];
    if (id == kNoHeap) throw InvariantViolation("minimum keeper points at an empty rank");
    auto found = u_.find(static_cast<std::int64_t>(heaps_[id].heap.find_min().time));
    if (!found || found->payload != id) throw InvariantViolation("U does not map the minimum to its heap");
    WsItem item = heaps_[id].heap.extract_min();
    --size_;
    last_rank_ = r;
    if (heaps_[id].heap.empty()) {
        free_heap(id);
        ranks_[r] = kNoHeap;
    }
    refresh_prefix(r + 1);
    restore_top();
    after_op();
    return item.key;
}

void WorkSetHeap::decrease_key(Handle h, PriorityKey key) {
    auto found = u_.find(static_cast<std::int64_t>(h.time));
    if (!found) throw ContractViolation("stale work-set heap handle");
    Slot& s = heaps_[found->payload];
    if (!s.heap.contains(h.node) || s.heap.value(h.node).time != h.time)
        throw ContractViolation("stale work-set heap handle");
    s.heap.decrease_key(h.node, WsItem{key, h.time});
    const PriorityKey& m = s.heap.find_min().key;
    if (!(m == m_.get(s.rank))) m_.decrease(s.rank, m);
    after_op();
}

std::vector<std::size_t> WorkSetHeap::rank_sizes() const {
    std::vector<std::size_t> out(ranks_.size());
    for (std::size_t r = 0; r < ranks_.size(); ++r) out[r] = heap_size(r);
    return out;
}

std::optional<std::size_t> WorkSetHeap::rank_of(const Handle& h) const {
    auto found = u_.find(static_cast<std::int64_t>(h.time));
    if (!found) return std::nullopt;
    const Slot& s = heaps_[found->payload];
    if (!s.heap.contains(h.node)) return std::nullopt;
    return s.rank;
}

std::optional<std::string> WorkSetHeap::check_invariants(bool deep) const {
    auto rank_str = [](std::size_t r) { return "rank " + std::to_string(r); };
    if (ranks_.empty()) return "no rank slots";
    if (m_.size() != ranks_.size()) return "M length differs from the number of ranks";
    const std::size_t top = ranks_.size() - 1;
    if (top > 0 && ranks_[top] == kNoHeap) return "top rank slot is empty";

    std::size_t total = 0;
    std::size_t nonempty = 0;
    std::optional<std::int64_t> newer_start;
    for (std::size_t r = 0; r < ranks_.size(); ++r) {
        std::uint32_t id = ranks_[r];
        if (!(m_.get(r) == rank_min(r))) return "M[" + std::to_string(r) + "] is not the minimum of its heap";
        if (id == kNoHeap) continue;
        const Slot& s = heaps_[id];
        if (!s.used || s.rank != r) return rank_str(r) + ": heap bookkeeping is inconsistent";
        if (s.heap.empty()) return rank_str(r) + ": empty heap occupies a slot";
        if (s.heap.size() > cap(r)) return rank_str(r) + ": size exceeds 2^(2^r)";
        // Older elements live in higher ranks.
        if (newer_start && s.end > *newer_start) return rank_str(r) + ": insertion times overlap a lower rank";
        newer_start = s.start;
        auto mapped = u_.get(s.start, s.end);
        if (!mapped || *mapped != id) return rank_str(r) + ": U does not map the heap's interval to it";
        total += s.heap.size();
        ++nonempty;
    }
    if (total != size_) return "rank sizes do not add up to the heap size";
    if (u_.size() != nonempty) return "U holds intervals of heaps that are not in a rank";
    if (top >= 2 && heap_size(top) + heap_size(top - 1) < cap(top - 1))
        return "|H_R| + |H_{R-1}| is below 2^(2^(R-1))";
    if (size_ >= 4) {
        double bound = std::ceil(std::log2(std::log2(static_cast<double>(size_)))) + 2;
        if (static_cast<double>(top) > bound) return "maximum rank exceeds log log n + 2";
    }
    if (!m_.validate()) return "suffix minima of M are inconsistent";

    if (deep) {
        for (std::size_t r = 0; r < ranks_.size(); ++r) {
            if (ranks_[r] == kNoHeap) continue;
            const Slot& s = heaps_[ranks_[r]];
            if (!s.heap.validate()) return rank_str(r) + ": inner heap is malformed";
            bool inside = true;
            s.heap.for_each([&](NodeHandle, const WsItem& item) {
                auto t = static_cast<std::int64_t>(item.time);
                if (t < s.start || t >= s.end) inside = false;
            });
            if (!inside) return rank_str(r) + ": element outside the heap's time interval";
        }
    }
    return std::nullopt;
}

void WorkSetHeap::after_op() {
    if (!options_.check_invariants) return;
    ++ops_;
    bool deep = options_.deep_check_period != 0 && ops_ % options_.deep_check_period == 0;
    if (auto err = check_invariants(deep)) throw InvariantViolation(*err);
}

}  // namespace uopt
