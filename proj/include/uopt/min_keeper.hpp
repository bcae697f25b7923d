#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "uopt/errors.hpp"
#include "uopt/skippable_array.hpp"

namespace uopt {

/// Array M with O(1) argmin. Keeps the suffix minima of M as a skippable
/// array of witness indices: S[i] is the leftmost index of min(M[i:]).
///
/// `Order` is a three-way comparator with a counted `operator()` and an
/// uncounted `audit()`; equal values (operator==) never reach the comparator.
template <class T, class Order>
class MinKeeper {
public:
    explicit MinKeeper(Order order) : order_(std::move(order)) {}

    std::size_t size() const { return m_.size(); }
    const T& get(std::size_t i) const { return m_.at(i); }
    std::span<const T> values() const { return m_; }

    /// Leftmost index of the minimum.
    std::size_t find_min() const {
        if (m_.empty()) throw ContractViolation("find_min on empty MinKeeper");
        return s_.get(0);
    }

    /// Requires x <= M[i].
    void decrease(std::size_t i, const T& x) {
        if (i >= m_.size()) throw ContractViolation("MinKeeper index out of range");
        if (order_.audit(x, m_[i]) > 0) throw ContractViolation("MinKeeper::decrease would increase M[i]");
        m_[i] = x;
        const auto idx = static_cast<std::int64_t>(i);
        const auto w = s_.get(idx);
        std::int64_t j;
        if (w == i) {
            j = s_.skip(idx);
        } else {
            ++decrease_steps_;
            if (cmp(x, m_[w]) > 0) return;
            j = s_.change_skip(idx, static_cast<std::uint32_t>(i));
        }
        while (j >= 0) {
            ++decrease_steps_;
            const auto wj = s_.get(j);
            if (cmp(m_[wj], x) <= 0) break;
            j = s_.change_skip(j, static_cast<std::uint32_t>(i));
        }
    }

    /// M[0 : p.size()) = p; may grow the array. O(|p|) comparisons.
    void change_prefix(std::span<const T> p) {
        if (p.empty()) return;
        // Same entries as before: nothing to recompute.
        if (p.size() <= m_.size() && std::equal(p.begin(), p.end(), m_.begin())) return;
        if (p.size() > m_.size()) m_.resize(p.size());
        std::copy(p.begin(), p.end(), m_.begin());
        scratch_.resize(p.size());
        std::int64_t k = static_cast<std::int64_t>(p.size()) - 1;
        std::uint32_t right = (p.size() < m_.size()) ? s_.get(static_cast<std::int64_t>(p.size())) : kNone;
        for (; k >= 0; --k) {
            const auto ku = static_cast<std::uint32_t>(k);
            if (right == kNone || cmp(m_[ku], m_[right]) <= 0) right = ku;
            scratch_[static_cast<std::size_t>(k)] = right;
        }
        s_.assign_prefix(scratch_);
    }

    /// Drops the last entry; requires the last two entries to be equal.
    void pop() {
        if (m_.size() < 2) throw ContractViolation("MinKeeper::pop needs at least two entries");
        if (cmp(m_[m_.size() - 1], m_[m_.size() - 2]) != 0)
            throw ContractViolation("MinKeeper::pop requires the last two entries to be equal");
        m_.pop_back();
        s_.pop_back();
    }

    /// Witness index stored at S[i].
    std::size_t suffix_witness(std::size_t i) const { return s_.get(static_cast<std::int64_t>(i)); }

    /// Recomputes every suffix minimum with uncounted comparisons and checks
    /// S against it, including the leftmost-tie rule.
    bool validate() const {
        if (static_cast<std::int64_t>(m_.size()) != s_.size() || !s_.validate()) return false;
        std::size_t best = m_.size();
        for (std::size_t k = m_.size(); k-- > 0;) {
            if (best == m_.size() || order_.audit(m_[k], m_[best]) <= 0) best = k;
            if (s_.get(static_cast<std::int64_t>(k)) != best) return false;
        }
        return true;
    }

    std::uint64_t decrease_steps() const { return decrease_steps_; }
    const typename SkippableArray<std::uint32_t>::RunStats& run_stats() const { return s_.stats(); }

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    int cmp(const T& a, const T& b) { return a == b ? 0 : order_(a, b); }

    Order order_;
    std::vector<T> m_;
    SkippableArray<std::uint32_t> s_;
    std::vector<std::uint32_t> scratch_;
    std::uint64_t decrease_steps_ = 0;
};

}  // namespace uopt
