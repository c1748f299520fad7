#ifndef KSPM_CONFIG_HPP
#define KSPM_CONFIG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kspm/errors.hpp"

namespace kspm {

/// One-dimensional sandpile configuration in slope representation.
///
/// Columns are 1-based.  The configuration proper has slopes s_1..s_m; p
/// extra zero-initialized slots at m+1..m+p receive the +1 increments from
/// firings near the right edge, so a firing at any column in 1..m always has
/// somewhere to land.  Slopes at any other index read as 0.
class SlopeConfig {
public:
    SlopeConfig() : p_(1), length_(0), slots_(1, 0) {}

    /// Builds a configuration from its real slopes; overflow slots start at 0.
    SlopeConfig(std::int64_t p, std::vector<std::int64_t> slopes)
        : p_(p), length_(static_cast<std::int64_t>(slopes.size())), slots_(std::move(slopes)) {
        if (p < 1) {
            throw InvalidInput("parameter p must be >= 1, got " + std::to_string(p));
        }
        slots_.resize(static_cast<std::size_t>(length_ + p_), 0);
    }

    std::int64_t p() const { return p_; }

    /// Number of real columns m (the configuration length).
    std::int64_t length() const { return length_; }

    /// Slope at column i; 0 for any i outside the stored slots.
    std::int64_t slope(std::int64_t i) const {
        if (i < 1 || i > length_ + p_) return 0;
        return slots_[static_cast<std::size_t>(i - 1)];
    }

    void set_slope(std::int64_t i, std::int64_t value) {
        if (i < 1 || i > length_ + p_) {
            throw IndexOutOfRange("column " + std::to_string(i) + " outside 1.." +
                                  std::to_string(length_ + p_));
        }
        slots_[static_cast<std::size_t>(i - 1)] = value;
    }

    void add_to_slope(std::int64_t i, std::int64_t delta) {
        set_slope(i, slope(i) + delta);
    }

    /// s_1..s_m.
    std::span<const std::int64_t> real_slopes() const {
        return {slots_.data(), static_cast<std::size_t>(length_)};
    }

    /// s_{m+1}..s_{m+p}.
    std::span<const std::int64_t> overflow() const {
        return {slots_.data() + length_, static_cast<std::size_t>(p_)};
    }

    /// s_1..s_{m+p}.
    std::span<const std::int64_t> all_slots() const { return slots_; }

    bool operator==(const SlopeConfig& other) const {
        return p_ == other.p_ && length_ == other.length_ && slots_ == other.slots_;
    }

private:
    std::int64_t p_;
    std::int64_t length_;
    std::vector<std::int64_t> slots_;
};

/// Height representation: h_1..h_n grain counts, rightmost column anchored
/// at height 0 when produced by slopes_to_heights.
struct HeightConfig {
    std::vector<std::int64_t> heights;

    bool operator==(const HeightConfig& other) const { return heights == other.heights; }
};

// -- Firing strategies -------------------------------------------------------

struct Leftmost {};
struct Rightmost {};
struct SeededRandom {
    std::uint64_t seed = 0;
};
struct Explicit {
    std::vector<std::int64_t> columns;
};

/// Update policy for stabilize().  Every policy fires only currently-unstable
/// columns; all maximal policies reach the same fixed point.
using FiringStrategy = std::variant<Leftmost, Rightmost, SeededRandom, Explicit>;

struct StabilizeResult {
    SlopeConfig config;
    std::vector<std::int64_t> firings;
};

// -- Operations ---------------------------------------------------------------

/// s_i = h_i - h_{i+1}.  Non-monotone heights are accepted; the result simply
/// reports is_monotone() == false.
SlopeConfig heights_to_slopes(const HeightConfig& h, std::int64_t p);

/// Inverse of heights_to_slopes over the real slopes, anchored at h_n = 0.
HeightConfig slopes_to_heights(const SlopeConfig& s);

/// s_i <= p for all real columns.
bool is_stable(const SlopeConfig& s);

/// s_i >= 0 for all real columns.
bool is_monotone(const SlopeConfig& s);

/// Stable and monotone.
bool in_gsm(const SlopeConfig& s);

/// Applies the transition rule at column i:
///   s_{i-1} += p,  s_i -= p+1,  s_{i+p} += 1.
/// Updates at indices < 1 are discarded; the update at i+p lands in the
/// overflow slots when i+p > m.
SlopeConfig fire(const SlopeConfig& s, std::int64_t i);

/// One grain on column 1: s_1 += 1.
SlopeConfig add_grain(const SlopeConfig& s);

/// Ascending list of real columns with slope > p.
std::vector<std::int64_t> unstable_columns(const SlopeConfig& s);

/// Fires per the strategy until no real column is unstable.  Guarded by a
/// firing budget of m*(m+1); exceeding it raises InternalBoundExceeded.
StabilizeResult stabilize(const SlopeConfig& s, const FiringStrategy& strategy);

/// Total grain count over all stored slots (column j holds sum of slopes at
/// and right of j, so the total is sum of i * s_i).  Invariant under fire().
std::int64_t total_grains(const SlopeConfig& s);

namespace detail {

/// In-place transition rule; caller has validated index and instability.
inline void fire_in_place(SlopeConfig& s, std::int64_t i) {
    const std::int64_t p = s.p();
    if (i - 1 >= 1) s.add_to_slope(i - 1, p);
    s.add_to_slope(i, -(p + 1));
    s.add_to_slope(i + p, 1);
}

}  // namespace detail

}  // namespace kspm

#endif
