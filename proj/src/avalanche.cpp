#include "kspm/avalanche.hpp"

#include <algorithm>

namespace kspm {

std::string format_status(const Status& status, std::int64_t p) {
    std::string out = "(";
    for (std::int64_t j = 0; j < p; ++j) {
        if (j > 0) out += ',';
        out += status.bit(j) ? '1' : '0';
    }
    out += ')';
    return out;
}

Avalanche compute_avalanche(const SlopeConfig& s) {
    if (!in_gsm(s)) {
        throw NotInGSM("avalanches are defined on stable monotone configurations");
    }
    StabilizeResult result = stabilize(add_grain(s), Leftmost{});
    Avalanche av;
    av.kinds = classify(result.firings);
    av.firings = std::move(result.firings);
    av.final = std::move(result.config);
    av.fired_set = FiredSet(s.length());
    for (std::int64_t column : av.firings) {
        av.fired_set.set(column, true);
    }
    return av;
}

std::vector<FiringKind> classify(std::span<const std::int64_t> firings) {
    std::vector<FiringKind> kinds;
    kinds.reserve(firings.size());
    std::int64_t max_so_far = 0;  // max of the empty prefix is 0
    std::int64_t previous = 0;
    for (std::size_t t = 0; t < firings.size(); ++t) {
        const std::int64_t column = firings[t];
        if (column > max_so_far) {
            kinds.push_back(FiringKind::Peak);
            max_so_far = column;
        } else if (column == previous - 1) {
            kinds.push_back(FiringKind::Col);
        } else {
            throw StructureViolation("firing " + std::to_string(column) + " at step " +
                                     std::to_string(t + 1) + " is neither a peak nor a col");
        }
        previous = column;
    }
    return kinds;
}

Status status_at(const Avalanche& av, std::int64_t i) {
    const std::int64_t p = av.final.p();
    detail::require_packable_p(p);
    Status status;
    status.position = i;
    for (std::int64_t j = 0; j < p; ++j) {
        if (av.fired(i - p + j)) status.bits |= 1u << j;
    }
    return status;
}

bool decide_naive(const ApInstance& inst) {
    const Avalanche av = compute_avalanche(inst.config());
    return av.fired(inst.k() - inst.config().p());
}

PeakLocalityReport check_peak_locality(const Avalanche& av, const SlopeConfig& s) {
    PeakLocalityReport report;
    std::int64_t previous_peak = -1;
    for (std::size_t t = 0; t < av.firings.size(); ++t) {
        if (av.kinds[t] != FiringKind::Peak) continue;
        const std::int64_t q = av.firings[t];
        if (q > 1) {
            if (s.slope(q) != s.p()) {
                report.violations.push_back(
                    {q, "s_q = p = " + std::to_string(s.p()), std::to_string(s.slope(q))});
            }
            if (previous_peak < 0) {
                report.violations.push_back({q, "an earlier peak within distance p", "none"});
            } else if (q - previous_peak > s.p()) {
                report.violations.push_back({q,
                                             "previous peak within distance " + std::to_string(s.p()),
                                             "distance " + std::to_string(q - previous_peak)});
            }
        }
        previous_peak = q;
    }
    return report;
}

bool check_fired_fixed_point(const SlopeConfig& s, const FiredSet& fired) {
    const std::int64_t p = s.p();
    for (std::int64_t i = 1; i <= s.length(); ++i) {
        std::int64_t reachable = s.slope(i);
        if (i == 1) reachable += 1;
        if (fired.fired(i + 1)) reachable += p;
        if (fired.fired(i - p)) reachable += 1;
        if (fired.fired(i) != (reachable > p)) return false;
    }
    return true;
}

}  // namespace kspm
