#include "kspm/config.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace kspm {

SlopeConfig heights_to_slopes(const HeightConfig& h, std::int64_t p) {
    if (h.heights.empty()) {
        throw InvalidInput("height sequence must contain at least one column");
    }
    std::vector<std::int64_t> slopes;
    slopes.reserve(h.heights.size() - 1);
    for (std::size_t i = 0; i + 1 < h.heights.size(); ++i) {
        slopes.push_back(h.heights[i] - h.heights[i + 1]);
    }
    return SlopeConfig(p, std::move(slopes));
}

HeightConfig slopes_to_heights(const SlopeConfig& s) {
    const auto slopes = s.real_slopes();
    HeightConfig h;
    h.heights.assign(slopes.size() + 1, 0);
    for (std::size_t i = slopes.size(); i-- > 0;) {
        h.heights[i] = h.heights[i + 1] + slopes[i];
    }
    return h;
}

bool is_stable(const SlopeConfig& s) {
    const auto slopes = s.real_slopes();
    return std::all_of(slopes.begin(), slopes.end(),
                       [p = s.p()](std::int64_t v) { return v <= p; });
}

bool is_monotone(const SlopeConfig& s) {
    const auto slopes = s.real_slopes();
    return std::all_of(slopes.begin(), slopes.end(), [](std::int64_t v) { return v >= 0; });
}

bool in_gsm(const SlopeConfig& s) { return is_stable(s) && is_monotone(s); }

SlopeConfig fire(const SlopeConfig& s, std::int64_t i) {
    if (i < 1 || i > s.length()) {
        throw IndexOutOfRange("cannot fire column " + std::to_string(i) +
                              " of a configuration of length " + std::to_string(s.length()));
    }
    if (s.slope(i) <= s.p()) {
        throw FiringStableColumn("column " + std::to_string(i) + " has slope " +
                                 std::to_string(s.slope(i)) + " <= p = " + std::to_string(s.p()));
    }
    SlopeConfig out = s;
    detail::fire_in_place(out, i);
    return out;
}

SlopeConfig add_grain(const SlopeConfig& s) {
    if (s.length() < 1) {
        throw InvalidInput("cannot add a grain to an empty configuration");
    }
    SlopeConfig out = s;
    out.add_to_slope(1, 1);
    return out;
}

std::vector<std::int64_t> unstable_columns(const SlopeConfig& s) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 1; i <= s.length(); ++i) {
        if (s.slope(i) > s.p()) out.push_back(i);
    }
    return out;
}

std::int64_t total_grains(const SlopeConfig& s) {
    const auto slots = s.all_slots();
    std::int64_t total = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        total += static_cast<std::int64_t>(i + 1) * slots[i];
    }
    return total;
}

namespace {

class UnstableSet {
public:
    explicit UnstableSet(const SlopeConfig& s) {
        for (std::int64_t i = 1; i <= s.length(); ++i) {
            if (s.slope(i) > s.p()) columns_.insert(i);
        }
    }

    bool empty() const { return columns_.empty(); }
    std::size_t size() const { return columns_.size(); }
    std::int64_t leftmost() const { return *columns_.begin(); }
    std::int64_t rightmost() const { return *columns_.rbegin(); }
    bool contains(std::int64_t i) const { return columns_.count(i) != 0; }

    std::int64_t nth(std::size_t index) const {
        auto it = columns_.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(index));
        return *it;
    }

    /// Re-evaluates membership of column i after a slope change.
    void refresh(const SlopeConfig& s, std::int64_t i) {
        if (i < 1 || i > s.length()) return;
        if (s.slope(i) > s.p()) {
            columns_.insert(i);
        } else {
            columns_.erase(i);
        }
    }

private:
    std::set<std::int64_t> columns_;
};

void fire_and_refresh(SlopeConfig& cur, UnstableSet& unstable, std::int64_t column) {
    detail::fire_in_place(cur, column);
    unstable.refresh(cur, column - 1);
    unstable.refresh(cur, column);
    unstable.refresh(cur, column + cur.p());
}

}  // namespace

StabilizeResult stabilize(const SlopeConfig& s, const FiringStrategy& strategy) {
    SlopeConfig cur = s;
    const std::int64_t m = cur.length();
    const std::uint64_t budget = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m + 1);
    std::vector<std::int64_t> firings;
    UnstableSet unstable(cur);

    auto spend_budget = [&]() {
        if (firings.size() >= budget) {
            throw InternalBoundExceeded("stabilization exceeded " + std::to_string(budget) +
                                        " firings (m*(m+1) guard)");
        }
    };

    if (const auto* explicit_seq = std::get_if<Explicit>(&strategy)) {
        for (std::int64_t column : explicit_seq->columns) {
            if (column < 1 || column > m) {
                throw IndexOutOfRange("explicit strategy names column " + std::to_string(column) +
                                      " outside 1.." + std::to_string(m));
            }
            if (!unstable.contains(column)) {
                throw FiringStableColumn("explicit strategy names stable column " +
                                         std::to_string(column));
            }
            spend_budget();
            fire_and_refresh(cur, unstable, column);
            firings.push_back(column);
        }
        if (!unstable.empty()) {
            throw IncompleteExplicitSequence(
                "explicit strategy ended with column " + std::to_string(unstable.leftmost()) +
                " still unstable");
        }
        return {std::move(cur), std::move(firings)};
    }

    std::mt19937_64 rng;
    if (const auto* seeded = std::get_if<SeededRandom>(&strategy)) {
        rng.seed(seeded->seed);
    }

    while (!unstable.empty()) {
        spend_budget();
        std::int64_t column = 0;
        if (std::holds_alternative<Leftmost>(strategy)) {
            column = unstable.leftmost();
        } else if (std::holds_alternative<Rightmost>(strategy)) {
            column = unstable.rightmost();
        } else {
            column = unstable.nth(static_cast<std::size_t>(rng() % unstable.size()));
        }
        fire_and_refresh(cur, unstable, column);
        firings.push_back(column);
    }
    return {std::move(cur), std::move(firings)};
}

}  // namespace kspm
