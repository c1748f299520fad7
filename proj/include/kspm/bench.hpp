#ifndef KSPM_BENCH_HPP
#define KSPM_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kspm/config.hpp"

namespace kspm::bench {

/// What to measure.  Instances come from the seeded generator, so a plan
/// pins its whole corpus.
struct Plan {
    std::vector<std::string> methods = {"linear", "parallel"};
    std::vector<std::int64_t> sizes;
    std::vector<int> workers = {1};
    int repeats = 3;
    std::int64_t p = 3;
    double zero_density = 0.3;
    std::uint64_t seed = 1;
};

/// One raw timing row (one CSV line).
struct Sample {
    std::string method;
    std::int64_t m = 0;
    int workers = 1;
    int repeat = 1;
    std::int64_t elapsed_ns = 0;
    bool answer = false;
};

/// Aggregated method x size x workers cell.  Linear scans ignore the worker
/// count, so they collapse to one cell per size.
struct Cell {
    std::string method;
    std::int64_t m = 0;
    int workers = 1;
    std::int64_t median_ns = 0;
    std::int64_t min_ns = 0;
};

struct Ratio {
    std::string label;
    double value = 0.0;
};

struct Report {
    std::vector<Sample> samples;
    std::vector<Cell> cells;
    /// Linear-time scaling across consecutive sizes and parallel speedup
    /// across worker counts; only present when repeats >= 3 (medians need
    /// that many points).
    std::vector<Ratio> ratios;
};

/// Times every method x size x workers x repeat combination, one warmup run
/// before the timed repeats.  Rows for the same instance must agree on the
/// answer; a disagreement aborts with MethodDisagreement (benchmarking never
/// masks a correctness bug).
std::vector<Sample> collect_samples(const Plan& plan);

/// Pure aggregation of raw samples into cells and ratios; re-checks answer
/// agreement before emitting anything.
Report make_report(const Plan& plan, std::vector<Sample> samples);

Report run(const Plan& plan);

/// "method,m,workers,repeat,elapsed_ns,answer" rows under that header.
std::string to_csv(const std::vector<Sample>& samples);

std::string to_markdown(const Report& report);

}  // namespace kspm::bench

#endif
