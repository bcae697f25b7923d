#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "uopt/errors.hpp"
#include "uopt/interval_map.hpp"

namespace uopt {

/// Array stored as maximal runs of equal values. skip() and change_skip()
/// work on whole runs, which is what makes MinKeeper::decrease amortized O(1).
template <class T>
class SkippableArray {
public:
    /// Counts of runs created and destroyed, for potential-function checks.
    struct RunStats {
        std::uint64_t created = 0;
        std::uint64_t removed = 0;
    };

    std::int64_t size() const { return len_; }
    std::size_t run_count() const { return runs_.size(); }
    const RunStats& stats() const { return stats_; }

    T get(std::int64_t i) const {
        check_index(i);
        return runs_.find(i)->payload;
    }

    /// Largest j < i with A[j] != A[i], or -1.
    std::int64_t skip(std::int64_t i) const {
        check_index(i);
        return runs_.find(i)->start - 1;
    }

    /// Overwrites A[skip(i)+1 .. i] with x and returns skip(i).
    std::int64_t change_skip(std::int64_t i, const T& x) {
        check_index(i);
        auto run = *runs_.find(i);
        std::int64_t j = run.start - 1;
        if (run.payload == x) return j;
        erase_run(run.start, run.end);
        if (i + 1 < run.end) insert_run(i + 1, run.end, run.payload);
        insert_run(run.start, i + 1, x);
        coalesce_at(run.start);
        coalesce_at(i + 1);
        return j;
    }

    void push_back(const T& x) {
        insert_run(len_, len_ + 1, x);
        ++len_;
        coalesce_at(len_ - 1);
    }

    void pop_back() {
        if (len_ == 0) throw ContractViolation("pop_back on empty skippable array");
        auto run = *runs_.find(len_ - 1);
        erase_run(run.start, run.end);
        if (run.start < run.end - 1) insert_run(run.start, run.end - 1, run.payload);
        --len_;
    }

    /// Replaces A[0 : values.size()) with `values`, growing the array if needed.
    void assign_prefix(std::span<const T> values) {
        const auto p = static_cast<std::int64_t>(values.size());
        if (p == 0) return;
        // Drop runs that start inside [0, p); keep the tail of a straddling run.
        for (auto loc = runs_.find(0); loc && loc->start < p; loc = runs_.find(loc->end)) {
            erase_run(loc->start, loc->end);
            if (loc->end > p) {
                insert_run(p, loc->end, loc->payload);
                break;
            }
        }
        std::int64_t start = 0;
        for (std::int64_t k = 1; k <= p; ++k) {
            if (k == p || !(values[static_cast<std::size_t>(k)] == values[static_cast<std::size_t>(start)])) {
                insert_run(start, k, values[static_cast<std::size_t>(start)]);
                start = k;
            }
        }
        if (p > len_) len_ = p;
        coalesce_at(p);
    }

    /// Union of runs is [0, size) and adjacent runs differ.
    bool validate() const {
        if (!runs_.validate()) return false;
        std::int64_t expect = 0;
        bool ok = true;
        std::optional<T> last;
        runs_.for_each([&](const auto& r) {
            if (r.start != expect) ok = false;
            if (last && *last == r.payload) ok = false;
            last = r.payload;
            expect = r.end;
        });
        return ok && expect == len_;
    }

private:
    void check_index(std::int64_t i) const {
        if (i < 0 || i >= len_) throw ContractViolation("skippable array index " + std::to_string(i) + " out of range");
    }

    void insert_run(std::int64_t a, std::int64_t b, const T& x) {
        runs_.set(a, b, x);
        ++stats_.created;
    }

    void erase_run(std::int64_t a, std::int64_t b) {
        runs_.remove(a, b);
        ++stats_.removed;
    }

    // Merges the runs meeting at boundary `pos` when they hold equal values.
    void coalesce_at(std::int64_t pos) {
        if (pos <= 0 || pos >= len_) return;
        auto right = runs_.find(pos);
        auto left = runs_.find(pos - 1);
        if (!right || !left || right->start != pos || !(left->payload == right->payload)) return;
        erase_run(left->start, left->end);
        erase_run(right->start, right->end);
        insert_run(left->start, right->end, left->payload);
    }

    IntervalMap<T> runs_;
    std::int64_t len_ = 0;
    RunStats stats_;
};

}  // namespace uopt
