#include "uopt/weights.hpp"

#include <atomic>
#include <random>
#include <stdexcept>

#include "uopt/errors.hpp"

namespace uopt {

namespace {

std::atomic<std::uint32_t> next_arena_id{1};

constexpr __int128 kMaxValue = (static_cast<__int128>(1) << 126);

}  // namespace

ExactValue ExactValue::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    __int128 whole = 0;
    __int128 frac = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("malformed number: " + std::string(text));
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + std::string(text));
        seen_digit = true;
        if (seen_dot) {
            if (++frac_digits > kFractionDigits)
                throw std::invalid_argument("more than 18 fractional digits: " + std::string(text));
            frac = frac * 10 + (c - '0');
        } else {
            whole = whole * 10 + (c - '0');
            if (whole > kMaxValue / kScale) throw std::invalid_argument("number too large: " + std::string(text));
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
    for (int i = frac_digits; i < kFractionDigits; ++i) frac *= 10;
    return ExactValue(whole * kScale + frac);
}

std::string ExactValue::to_string() const {
    __int128 v = scaled_;
    bool negative = v < 0;
    if (negative) v = -v;
    __int128 whole = v / kScale;
    __int128 frac = v % kScale;
    std::string w;
    do {
        w.insert(w.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
        whole /= 10;
    } while (whole != 0);
    if (negative) w.insert(w.begin(), '-');
    if (frac == 0) return w;
    std::string f(kFractionDigits, '0');
    for (int i = kFractionDigits - 1; i >= 0; --i) {
        f[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }
    while (!f.empty() && f.back() == '0') f.pop_back();
    return w + "." + f;
}

ExactValue ExactValue::operator+(ExactValue other) const {
    if (scaled_ > kMaxValue - other.scaled_) throw std::overflow_error("weight sum overflow");
    return ExactValue(scaled_ + other.scaled_);
}

WeightArena::WeightArena(Masking masking) : id_(next_arena_id.fetch_add(1)) {
    if (masking == Masking::on) {
        std::random_device rd;
        std::mt19937_64 gen(rd());
        mask_ = (static_cast<unsigned __int128>(gen()) << 64) | gen();
    }
}

void WeightArena::check(WeightHandle h) const {
    if (!owns(h)) throw UsageFault("weight handle does not belong to this arena");
}

__int128 WeightArena::load(WeightHandle h) const {
    return static_cast<__int128>(cells_[h.index()] ^ mask_);
}

WeightHandle WeightArena::intern(ExactValue value) {
    if (value.scaled() < 0) throw ContractViolation("weights must be nonnegative");
    cells_.push_back(static_cast<unsigned __int128>(value.scaled()) ^ mask_);
    return WeightHandle(id_, static_cast<std::uint32_t>(cells_.size() - 1));
}

WeightHandle WeightArena::zero() {
    if (!zero_.valid()) zero_ = intern(ExactValue{});
    return zero_;
}

WeightHandle WeightArena::add(WeightHandle a, WeightHandle b) {
    check(a);
    check(b);
    if (a.is_infinity() || b.is_infinity()) throw ContractViolation("add on the infinity sentinel");
    ExactValue sum = ExactValue::from_scaled(load(a)) + ExactValue::from_scaled(load(b));
    if (counters_.additions != std::numeric_limits<std::uint64_t>::max()) ++counters_.additions;
    return intern(sum);
}

int WeightArena::compare(WeightHandle a, WeightHandle b) {
    int c = audit_compare(a, b);
    if (!a.is_infinity() && !b.is_infinity() && counters_.comparisons != std::numeric_limits<std::uint64_t>::max())
        ++counters_.comparisons;
    return c;
}

int WeightArena::audit_compare(WeightHandle a, WeightHandle b) const {
    check(a);
    check(b);
    if (a.is_infinity() || b.is_infinity()) {
        if (a.is_infinity() && b.is_infinity()) return 0;
        return a.is_infinity() ? 1 : -1;
    }
    __int128 x = load(a);
    __int128 y = load(b);
    return x < y ? -1 : (x > y ? 1 : 0);
}

ExactValue AuditView::value(WeightHandle h) const {
    arena_->check(h);
    if (h.is_infinity()) throw ContractViolation("infinity has no value");
    return ExactValue::from_scaled(arena_->load(h));
}

}  // namespace uopt
