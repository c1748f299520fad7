#ifndef KSPM_VERIFY_HPP
#define KSPM_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kspm/ap_instance.hpp"
#include "kspm/config.hpp"

namespace kspm::verify {

struct Options {
    std::int64_t p = 1;
    std::int64_t max_len = 4;
    /// Extra seeded random configurations of length max_len, on top of the
    /// exhaustive sweep.
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
};

using DecideFn = std::function<bool(const ApInstance&)>;

/// The three decision routes under comparison.  Defaults to the library
/// implementations; tests may substitute deliberately broken ones.
struct Deciders {
    DecideFn naive;
    DecideFn linear;
    DecideFn parallel;
};

Deciders default_deciders(int workers);

/// First failing check, kept for reproduction.
struct Witness {
    SlopeConfig config;
    std::int64_t k = 0;
    std::string detail;
};

struct Summary {
    struct Line {
        std::string label;
        std::uint64_t configs = 0;
        std::uint64_t mismatches = 0;
    };
    std::vector<Line> lines;
    std::uint64_t total_configs = 0;
    std::uint64_t total_checks = 0;
    std::uint64_t violations = 0;
    std::optional<Witness> witness;

    bool clean() const { return violations == 0; }
};

/// Runs the oracle-equivalence sweep (naive = linear = parallel on every
/// valid k) plus the structural suites (distinct firings, peak/col
/// classification, peak locality, fired-set fixed point) over every
/// configuration of each length 1..max_len, then over `samples` random
/// configurations of length max_len.  Enumeration sizes are guarded the same
/// way as GsmEnumerator.
Summary run(const Options& options, const Deciders& deciders);

inline Summary run(const Options& options) {
    return run(options, default_deciders(options.workers));
}

std::string format_summary(const Summary& summary);

}  // namespace kspm::verify

#endif
