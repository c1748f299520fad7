#ifndef KSPM_AVALANCHE_HPP
#define KSPM_AVALANCHE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kspm/ap_instance.hpp"
#include "kspm/config.hpp"

namespace kspm {

enum class FiringKind { Peak, Col };

/// Membership map of fired columns; columns outside 1..m never fire.
class FiredSet {
public:
    FiredSet() = default;
    explicit FiredSet(std::int64_t length) : flags_(static_cast<std::size_t>(length), 0) {}

    bool fired(std::int64_t column) const {
        if (column < 1 || column > static_cast<std::int64_t>(flags_.size())) return false;
        return flags_[static_cast<std::size_t>(column - 1)] != 0;
    }

    void set(std::int64_t column, bool value) {
        flags_.at(static_cast<std::size_t>(column - 1)) = value ? 1 : 0;
    }

    std::vector<std::int64_t> columns() const {
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < flags_.size(); ++i) {
            if (flags_[i]) out.push_back(static_cast<std::int64_t>(i + 1));
        }
        return out;
    }

    bool operator==(const FiredSet&) const = default;

private:
    std::vector<char> flags_;
};

/// The canonical (lexicographically minimal) avalanche of a configuration:
/// the firing order triggered by one grain on column 1, with each firing
/// classified as a peak or a col.
struct Avalanche {
    std::vector<std::int64_t> firings;
    std::vector<FiringKind> kinds;
    FiredSet fired_set;
    SlopeConfig final;

    bool fired(std::int64_t column) const { return fired_set.fired(column); }
    bool empty() const { return firings.empty(); }
};

/// p-bit window of fired flags anchored at a position: bit j holds the flag
/// of column position - p + j, packed little-endian (b_0 in the lowest bit).
struct Status {
    std::uint32_t bits = 0;
    std::int64_t position = 0;

    bool bit(std::int64_t j) const { return (bits >> j) & 1u; }
    bool operator==(const Status&) const = default;
};

namespace detail {

/// Status bits live in a 32-bit word.
inline void require_packable_p(std::int64_t p) {
    if (p > 32) {
        throw PTooLarge("p = " + std::to_string(p) + " exceeds the 32-bit status packing limit");
    }
}

}  // namespace detail

/// "(b_0,...,b_{p-1})" tuple rendering.
std::string format_status(const Status& status, std::int64_t p);

/// Stabilizes add_grain(s) with the leftmost policy and classifies every
/// firing.  Empty when s_1 < p.
Avalanche compute_avalanche(const SlopeConfig& s);

/// Tags each firing: peak (greater than every earlier firing, with
/// max of the empty prefix taken as 0) or col (previous firing minus one).
/// Anything else raises StructureViolation.
std::vector<FiringKind> classify(std::span<const std::int64_t> firings);

/// Status of the avalanche at column i; columns < 1 never fire.
Status status_at(const Avalanche& av, std::int64_t i);

/// Brute-force oracle: answers whether the avalanche of inst.config()
/// increases the slope at column k, i.e. whether column k - p fires.
bool decide_naive(const ApInstance& inst);

/// Structured verification report; ok() iff no violations.
struct PeakLocalityReport {
    struct Violation {
        std::int64_t peak;
        std::string expected;
        std::string got;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks, for every peak q > 1 of av: s_q = p in the original configuration
/// and the previous peak is within distance p.  The converse (every slope-p
/// column near a peak is itself a peak) does not hold and is not checked.
PeakLocalityReport check_peak_locality(const Avalanche& av, const SlopeConfig& s);

/// Fixed-point characterization of the fired set: column i fires iff its
/// original slope plus everything it can receive (the grain at column 1, p
/// from a fired right neighbor, 1 from a fired column at distance p on the
/// left) exceeds p.
bool check_fired_fixed_point(const SlopeConfig& s, const FiredSet& fired);

}  // namespace kspm

#endif
