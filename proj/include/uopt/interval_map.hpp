#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>

#include "uopt/errors.hpp"

namespace uopt {

/// Set of right-open, pairwise non-overlapping intervals [start, end) with a
/// payload each. Backed by a balanced search tree; every operation is
/// O(log size).
template <class Payload>
class IntervalMap {
public:
    struct Interval {
        std::int64_t start;
        std::int64_t end;
        Payload payload;
    };

    struct Location {
        std::optional<Interval> find;  // interval containing t
        std::optional<Interval> prev;  // rightmost interval with end <= t
        std::optional<Interval> next;  // leftmost interval with start > t
    };

    void set(std::int64_t a, std::int64_t b, Payload payload) {
        if (!(a < b)) throw ContractViolation("interval [" + std::to_string(a) + "," + std::to_string(b) + ") is empty");
        auto it = map_.lower_bound(a);
        if (it != map_.end() && it->first < b) throw ContractViolation("interval overlaps a stored interval");
        if (it != map_.begin()) {
            auto p = std::prev(it);
            if (p->second.end > a) throw ContractViolation("interval overlaps a stored interval");
        }
        map_.emplace_hint(it, a, Entry{b, std::move(payload)});
    }

    void remove(std::int64_t a, std::int64_t b) {
        auto it = map_.find(a);
        if (it != map_.end() && it->second.end == b) map_.erase(it);
    }

    std::optional<Payload> get(std::int64_t a, std::int64_t b) const {
        auto it = map_.find(a);
        if (it == map_.end() || it->second.end != b) return std::nullopt;
        return it->second.payload;
    }

    std::optional<Interval> find(std::int64_t t) const {
        auto it = covering_or_before(t);
        if (it == map_.end() || it->second.end <= t) return std::nullopt;
        return as_interval(it);
    }

    std::optional<Interval> prev(std::int64_t t) const {
        auto it = covering_or_before(t);
        if (it == map_.end()) return std::nullopt;
        if (it->second.end <= t) return as_interval(it);
        if (it == map_.begin()) return std::nullopt;
        return as_interval(std::prev(it));
    }

    std::optional<Interval> next(std::int64_t t) const {
        auto it = map_.upper_bound(t);
        if (it == map_.end()) return std::nullopt;
        return as_interval(it);
    }

    Location locate(std::int64_t t) const { return {find(t), prev(t), next(t)}; }

    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    void clear() { map_.clear(); }

    template <class F>
    void for_each(F&& f) const {
        for (auto it = map_.begin(); it != map_.end(); ++it) f(as_interval(it));
    }

    /// Full scan: every interval nonempty, no two overlapping.
    bool validate() const {
        std::optional<std::int64_t> last_end;
        for (const auto& [start, e] : map_) {
            if (!(start < e.end)) return false;
            if (last_end && *last_end > start) return false;
            last_end = e.end;
        }
        return true;
    }

private:
    struct Entry {
        std::int64_t end;
        Payload payload;
    };
    using Map = std::map<std::int64_t, Entry>;

    // Interval with the largest start <= t, or end().
    typename Map::const_iterator covering_or_before(std::int64_t t) const {
        auto it = map_.upper_bound(t);
        if (it == map_.begin()) return map_.end();
        return std::prev(it);
    }

    static Interval as_interval(typename Map::const_iterator it) { return {it->first, it->second.end, it->second.payload}; }

    Map map_;
};

}  // namespace uopt
