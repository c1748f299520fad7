#ifndef KSPM_NCDECIDER_HPP
#define KSPM_NCDECIDER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "kspm/ap_instance.hpp"
#include "kspm/avalanche.hpp"
#include "kspm/config.hpp"

namespace kspm {

/// Hard cap on p for transfer-table construction (tables hold 2^p entries).
inline constexpr std::int64_t kPBuildCap = 16;

/// Above this, table sizes start to hurt; callers may want to warn.
inline constexpr std::int64_t kPWarnThreshold = 10;

/// Total map from p-bit statuses at position `from` to statuses at position
/// `to`; entry at index b is the image of status b.  Total on all 2^p inputs,
/// including statuses no real avalanche realizes; maps the all-zero status to
/// itself (a dead avalanche stays dead).
struct TransferFunction {
    std::vector<std::uint32_t> table;
    std::int64_t from = 0;
    std::int64_t to = 0;

    bool operator==(const TransferFunction&) const = default;
};

namespace detail {

/// Decides whether column i fires, given the status bits at i (bit j = fired
/// flag of column i-p+j) and a relative slope accessor (slope_rel(d) = slope
/// at column i+d, for d in [0, p)).
///
/// The smallest enabled peak at or after i is the smallest q = i+d with
/// s_q = p and column q-p fired (bit d).  Column i fires iff that q exists
/// and the col descent from q reaches i: every c from q-1 down to i has
/// s_c >= 1 or its own left column c-p fired (bit c-i).  Candidates at
/// exactly i+p are excluded: such a peak needs fired(i) first, so it cannot
/// cause it.  If the smallest candidate's descent is blocked, later
/// candidates cannot help (descents stop at already-fired columns), so the
/// search stops at the first enabled candidate.
template <typename SlopeRel>
bool next_fired(std::uint32_t bits, std::int64_t p, SlopeRel&& slope_rel) {
    for (std::int64_t d = 0; d < p; ++d) {
        if (slope_rel(d) == p && ((bits >> d) & 1u)) {
            for (std::int64_t e = d - 1; e >= 0; --e) {
                if (slope_rel(e) < 1 && !((bits >> e) & 1u)) return false;
            }
            return true;
        }
    }
    return false;
}

inline std::uint32_t shift_status(std::uint32_t bits, bool fired, std::int64_t p) {
    std::uint32_t out = bits >> 1;
    if (fired) out |= 1u << (p - 1);
    return out;
}

/// One step of the status scan: status at i -> status at i+1.
template <typename SlopeRel>
std::uint32_t advance_status(std::uint32_t bits, std::int64_t p, SlopeRel&& slope_rel) {
    return shift_status(bits, next_fired(bits, p, slope_rel), p);
}

}  // namespace detail

/// Status of the avalanche at position p+1, computed from s_1..s_{p+1} alone:
/// column 1 fires iff s_1 = p; columns 2..p fire only as cols descending from
/// a peak at p+1 (which needs fired(1) and s_{p+1} = p), and the descent
/// stops at the first zero slope.  Requires m >= p+1.
Status seed_status(const SlopeConfig& s);

/// Identity map at a position (spans the empty interval [at, at)).
TransferFunction identity_transfer(std::int64_t p, std::int64_t at);

/// The per-position map "status at i -> status at i+1" as a full table.
/// Valid for i in p+1..m; slopes beyond m read as 0.
TransferFunction build_transfer(const SlopeConfig& s, std::int64_t i);

/// Table composition: (g after f), spanning f.from..g.to.  Requires
/// f.to == g.from.  Associative, which is what makes the tree reduction
/// chunking-invariant.
TransferFunction compose(const TransferFunction& g, const TransferFunction& f);

/// Composes build_transfer(s, i) for i = p+1..m into one map from statuses
/// at p+1 to statuses at m+1, via a balanced fork-join tree over `workers`
/// threads.  Per-position tables are never materialized: each leaf chunk
/// advances all 2^p statuses across its positions in one sequential sweep.
/// The result is bit-identical for every worker count and chunking.
TransferFunction reduce_range(const SlopeConfig& s, int workers);

/// Two-stage decision: seed the status at p+1, apply the composed map,
/// read bit kappa-1 of the final status at m+1.  Configurations with
/// m <= p+1 fall back to the naive oracle.
bool decide_parallel(const ApInstance& inst, int workers);

/// Single left-to-right status scan; same answer in O(m) time and O(1)
/// extra space.
bool decide_linear(const ApInstance& inst);

/// Fired flags for columns first_column..first_column+flags.size()-1 plus
/// the status just past them.
struct WindowResult {
    std::int64_t first_column = 0;
    std::vector<char> fired_flags;
    Status status;

    bool flag(std::int64_t column) const {
        return fired_flags[static_cast<std::size_t>(column - first_column)] != 0;
    }
};

/// Advances a status across a detached window of slopes: given s_i..s_{j-1}
/// (as `slopes`, so j = i + slopes.size()) and the status at i, computes the
/// fired flags of columns i..j-p and the status at j-p+1.  Requires
/// i + p < j.
WindowResult window_advance(std::span<const std::int64_t> slopes, std::int64_t i,
                            const Status& status, std::int64_t p);

}  // namespace kspm

#endif
