#pragma once

// Comparison-addition model. Edge weights and every sum derived from them
// live in protected cells owned by a WeightArena; the only ways to use a cell
// are add() and compare(), both of which are counted.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace uopt {

/// Exact nonnegative decimal with 18 fractional digits, stored as a scaled
/// 128-bit integer. Sums of inputs are exact; overflow is reported.
class ExactValue {
public:
    static constexpr int kFractionDigits = 18;
    static constexpr __int128 kScale = static_cast<__int128>(1'000'000'000'000'000'000LL);

    constexpr ExactValue() = default;

    static ExactValue from_integer(std::int64_t v) { return ExactValue(static_cast<__int128>(v) * kScale); }
    /// Parses "12", "3.5", "0.000001". Throws std::invalid_argument on
    /// malformed input or more than 18 fractional digits.
    static ExactValue parse(std::string_view text);
    static constexpr ExactValue from_scaled(__int128 scaled) { return ExactValue(scaled); }

    constexpr __int128 scaled() const { return scaled_; }
    std::string to_string() const;

    ExactValue operator+(ExactValue other) const;
    constexpr auto operator<=>(const ExactValue&) const = default;

private:
    constexpr explicit ExactValue(__int128 s) : scaled_(s) {}
    __int128 scaled_ = 0;
};

/// Opaque reference to a protected cell. The +infinity sentinel is shared by
/// all arenas and orders above every cell without consuming a comparison.
class WeightHandle {
public:
    constexpr WeightHandle() = default;

    static constexpr WeightHandle infinity() { return WeightHandle(0, kInfIndex); }

    constexpr bool is_infinity() const { return index_ == kInfIndex; }
    constexpr bool valid() const { return index_ != kInvalidIndex; }
    constexpr std::uint32_t index() const { return index_; }
    constexpr std::uint32_t arena_id() const { return arena_; }

    constexpr bool operator==(const WeightHandle&) const = default;

private:
    friend class WeightArena;
    static constexpr std::uint32_t kInfIndex = std::numeric_limits<std::uint32_t>::max();
    static constexpr std::uint32_t kInvalidIndex = kInfIndex - 1;

    constexpr WeightHandle(std::uint32_t arena, std::uint32_t index) : arena_(arena), index_(index) {}

    std::uint32_t arena_ = 0;
    std::uint32_t index_ = kInvalidIndex;
};

struct Counters {
    std::uint64_t comparisons = 0;
    std::uint64_t additions = 0;

    Counters operator-(const Counters& o) const { return {comparisons - o.comparisons, additions - o.additions}; }
    Counters operator+(const Counters& o) const { return {comparisons + o.comparisons, additions + o.additions}; }
    bool operator==(const Counters&) const = default;
};

enum class Masking { off, on };

/// Append-only store of protected cells. Not thread-safe: one arena per
/// execution context.
class WeightArena {
public:
    explicit WeightArena(Masking masking = Masking::off);

    WeightArena(const WeightArena&) = delete;
    WeightArena& operator=(const WeightArena&) = delete;
    WeightArena(WeightArena&&) noexcept = default;
    WeightArena& operator=(WeightArena&&) noexcept = default;

    /// Interns an input weight as a new cell.
    WeightHandle intern(ExactValue value);
    /// The additive identity; used as the source distance.
    WeightHandle zero();

    WeightHandle add(WeightHandle a, WeightHandle b);
    int compare(WeightHandle a, WeightHandle b);

    /// Uncounted comparison for invariant checks and audits. Never call this
    /// from an algorithm whose comparisons are being measured.
    int audit_compare(WeightHandle a, WeightHandle b) const;

    Counters counters() const { return counters_; }
    void reset_counters() { counters_ = {}; }

    std::size_t size() const { return cells_.size(); }
    bool owns(WeightHandle h) const { return h.is_infinity() || (h.arena_id() == id_ && h.index() < cells_.size()); }
    std::uint32_t id() const { return id_; }

private:
    friend class AuditView;

    void check(WeightHandle h) const;
    __int128 load(WeightHandle h) const;

    std::uint32_t id_;
    unsigned __int128 mask_ = 0;
    std::vector<unsigned __int128> cells_;
    WeightHandle zero_;
    Counters counters_;
};

/// Read access to raw cell values. Only for oracles, serialization and audit
/// reports; algorithms must not use it.
class AuditView {
public:
    explicit AuditView(const WeightArena& arena) : arena_(&arena) {}

    /// Throws ContractViolation for the infinity sentinel.
    ExactValue value(WeightHandle h) const;

private:
    const WeightArena* arena_;
};

/// Three-way key for priority queues: weight first, vertex id on ties, so
/// ties never consume a weight comparison.
struct PriorityKey {
    WeightHandle weight;
    std::uint32_t vertex = 0;

    bool operator==(const PriorityKey&) const = default;
};

class KeyOrder {
public:
    explicit KeyOrder(WeightArena& arena) : arena_(&arena) {}

    int operator()(const PriorityKey& a, const PriorityKey& b) const {
        if (a == b) return 0;
        // A cell compared with itself is equal without reading it.
        int c = a.weight == b.weight ? 0 : arena_->compare(a.weight, b.weight);
        if (c != 0) return c;
        return a.vertex < b.vertex ? -1 : (a.vertex > b.vertex ? 1 : 0);
    }

    int audit(const PriorityKey& a, const PriorityKey& b) const {
        int c = arena_->audit_compare(a.weight, b.weight);
        if (c != 0) return c;
        return a.vertex < b.vertex ? -1 : (a.vertex > b.vertex ? 1 : 0);
    }

    WeightArena& arena() const { return *arena_; }

private:
    WeightArena* arena_;
};

}  // namespace uopt
