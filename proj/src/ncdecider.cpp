#include "kspm/ncdecider.hpp"

#include <future>
#include <numeric>
#include <string>
#include <utility>

namespace kspm {

namespace {

void require_buildable_p(std::int64_t p) {
    if (p > kPBuildCap) {
        throw PTooLarge("p = " + std::to_string(p) + " exceeds the transfer-table cap of " +
                        std::to_string(kPBuildCap));
    }
}

void require_gsm_with_seed_room(const SlopeConfig& s) {
    if (!in_gsm(s)) {
        throw NotInGSM("status computations are defined on stable monotone configurations");
    }
    if (s.length() < s.p() + 1) {
        throw ConfigTooShort("seeding the status needs position p+1 = " +
                             std::to_string(s.p() + 1) + " to exist, but |s| = " +
                             std::to_string(s.length()));
    }
}

/// Composed map over positions [from, to): every status advanced in one sweep.
TransferFunction scan_chunk(const SlopeConfig& s, std::int64_t from, std::int64_t to) {
    const std::int64_t p = s.p();
    const std::size_t table_size = std::size_t{1} << p;
    TransferFunction out;
    out.from = from;
    out.to = to;
    out.table.resize(table_size);
    std::iota(out.table.begin(), out.table.end(), 0u);

    const auto slots = s.all_slots();
    std::vector<std::uint32_t> step(table_size);
    for (std::int64_t i = from; i < to; ++i) {
        // i + d stays within the stored slots: d < p and i <= m.
        const std::int64_t* base = slots.data() + (i - 1);
        for (std::uint32_t b = 0; b < table_size; ++b) {
            step[b] = detail::advance_status(b, p, [&](std::int64_t d) { return base[d]; });
        }
        for (auto& entry : out.table) entry = step[entry];
    }
    return out;
}

TransferFunction reduce_recursive(const SlopeConfig& s, std::int64_t from, std::int64_t to,
                                  int workers) {
    constexpr std::int64_t kMinChunk = 2048;
    if (workers <= 1 || to - from <= kMinChunk) {
        return scan_chunk(s, from, to);
    }
    const std::int64_t mid = from + (to - from) / 2;
    const int right_workers = workers / 2;
    auto right = std::async(std::launch::async, reduce_recursive, std::cref(s), mid, to,
                            right_workers);
    TransferFunction left = reduce_recursive(s, from, mid, workers - right_workers);
    return compose(right.get(), left);
}

}  // namespace

Status seed_status(const SlopeConfig& s) {
    require_gsm_with_seed_room(s);
    detail::require_packable_p(s.p());
    const std::int64_t p = s.p();
    Status seed;
    seed.position = p + 1;
    if (s.slope(1) != p) return seed;  // the added grain does not destabilize column 1
    seed.bits = 1u;
    if (s.slope(p + 1) == p) {
        for (std::int64_t c = p; c >= 2; --c) {
            if (s.slope(c) < 1) break;
            seed.bits |= 1u << (c - 1);
        }
    }
    return seed;
}

TransferFunction identity_transfer(std::int64_t p, std::int64_t at) {
    require_buildable_p(p);
    TransferFunction out;
    out.from = at;
    out.to = at;
    out.table.resize(std::size_t{1} << p);
    std::iota(out.table.begin(), out.table.end(), 0u);
    return out;
}

TransferFunction build_transfer(const SlopeConfig& s, std::int64_t i) {
    require_buildable_p(s.p());
    if (i < s.p() + 1 || i > s.length()) {
        throw PositionOutOfRange("transfer positions run p+1.." + std::to_string(s.length()) +
                                 ", got " + std::to_string(i));
    }
    return scan_chunk(s, i, i + 1);
}

TransferFunction compose(const TransferFunction& g, const TransferFunction& f) {
    if (f.to != g.from) {
        throw SpanMismatch("composing [" + std::to_string(f.from) + "," + std::to_string(f.to) +
                           ") with [" + std::to_string(g.from) + "," + std::to_string(g.to) + ")");
    }
    if (f.table.size() != g.table.size()) {
        throw SpanMismatch("transfer tables disagree on p");
    }
    TransferFunction out;
    out.from = f.from;
    out.to = g.to;
    out.table.resize(f.table.size());
    for (std::size_t b = 0; b < f.table.size(); ++b) {
        out.table[b] = g.table[f.table[b]];
    }
    return out;
}

TransferFunction reduce_range(const SlopeConfig& s, int workers) {
    require_buildable_p(s.p());
    if (s.length() < s.p() + 1) {
        throw ConfigTooShort("reduce_range needs |s| >= p+1, but |s| = " +
                             std::to_string(s.length()));
    }
    if (workers < 1) {
        throw InvalidInput("worker count must be >= 1");
    }
    return reduce_recursive(s, s.p() + 1, s.length() + 1, workers);
}

bool decide_parallel(const ApInstance& inst, int workers) {
    if (workers < 1) {
        throw InvalidInput("worker count must be >= 1");
    }
    const SlopeConfig& s = inst.config();
    if (s.length() <= s.p() + 1) {
        return decide_naive(inst);
    }
    const Status seed = seed_status(s);
    const TransferFunction mu = reduce_range(s, workers);
    const std::uint32_t final_bits = mu.table[seed.bits];
    return (final_bits >> (inst.kappa() - 1)) & 1u;
}

bool decide_linear(const ApInstance& inst) {
    const SlopeConfig& s = inst.config();
    const std::int64_t p = s.p();
    const std::int64_t m = s.length();
    if (m <= p + 1) {
        return decide_naive(inst);
    }
    std::uint32_t bits = seed_status(s).bits;
    const auto slots = s.all_slots();
    for (std::int64_t i = p + 1; i <= m; ++i) {
        const std::int64_t* base = slots.data() + (i - 1);
        bits = detail::advance_status(bits, p, [&](std::int64_t d) { return base[d]; });
    }
    return (bits >> (inst.kappa() - 1)) & 1u;
}

WindowResult window_advance(std::span<const std::int64_t> slopes, std::int64_t i,
                            const Status& status, std::int64_t p) {
    const std::int64_t j = i + static_cast<std::int64_t>(slopes.size());
    if (j <= i + p) {
        throw WindowTooNarrow("window [" + std::to_string(i) + "," + std::to_string(j) +
                              ") must extend past i + p");
    }
    if (status.position != i) {
        throw SpanMismatch("status is anchored at " + std::to_string(status.position) +
                           ", window starts at " + std::to_string(i));
    }
    detail::require_packable_p(p);
    WindowResult result;
    result.first_column = i;
    result.fired_flags.reserve(static_cast<std::size_t>(j - p - i + 1));
    std::uint32_t bits = status.bits;
    for (std::int64_t c = i; c <= j - p; ++c) {
        const std::int64_t* base = slopes.data() + (c - i);
        const bool fired = detail::next_fired(bits, p, [&](std::int64_t d) { return base[d]; });
        result.fired_flags.push_back(fired ? 1 : 0);
        bits = detail::shift_status(bits, fired, p);
    }
    result.status.bits = bits;
    result.status.position = j - p + 1;
    return result;
}

}  // namespace kspm
