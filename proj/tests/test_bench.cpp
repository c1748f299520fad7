#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kspm/bench.hpp"
#include "kspm/errors.hpp"

using namespace kspm;

namespace {

bench::Sample sample(const std::string& method, std::int64_t m, int workers, int repeat,
                     std::int64_t elapsed_ns, bool answer) {
    bench::Sample s;
    s.method = method;
    s.m = m;
    s.workers = workers;
    s.repeat = repeat;
    s.elapsed_ns = elapsed_ns;
    s.answer = answer;
    return s;
}

}  // namespace

TEST_CASE("collect_samples produces the full method x size x workers grid") {
    bench::Plan plan;
    plan.methods = {"linear", "parallel"};
    plan.sizes = {64, 128};
    plan.workers = {1, 2};
    plan.repeats = 2;
    plan.p = 3;
    plan.seed = 5;

    const auto samples = bench::collect_samples(plan);
    CHECK(samples.size() == 16);  // 2 methods x 2 sizes x 2 workers x 2 repeats
    for (const auto& s : samples) {
        CHECK(s.elapsed_ns >= 0);
    }

    // Same instance, same answer, regardless of method.
    for (const auto& a : samples) {
        for (const auto& b : samples) {
            if (a.m == b.m) CHECK(a.answer == b.answer);
        }
    }
}

TEST_CASE("plan validation") {
    bench::Plan plan;
    plan.sizes = {4};  // below p+2 for p=3
    CHECK_THROWS_AS(bench::collect_samples(plan), InvalidInput);

    plan.sizes = {64};
    plan.repeats = 0;
    CHECK_THROWS_AS(bench::collect_samples(plan), InvalidInput);

    plan.repeats = 1;
    plan.methods = {"quantum"};
    CHECK_THROWS_AS(bench::collect_samples(plan), InvalidInput);
}

TEST_CASE("make_report aggregates medians and collapses linear workers") {
    bench::Plan plan;
    plan.methods = {"linear", "parallel"};
    plan.sizes = {100, 1000};
    plan.workers = {1, 4};
    plan.repeats = 3;

    std::vector<bench::Sample> samples;
    for (std::int64_t m : plan.sizes) {
        const std::int64_t base = m * 10;
        for (int w : plan.workers) {
            for (int r = 1; r <= 3; ++r) {
                samples.push_back(sample("linear", m, w, r, base + r, true));
                samples.push_back(sample("parallel", m, w, r, base / w + r, true));
            }
        }
    }
    const bench::Report report = bench::make_report(plan, samples);

    // linear@100, linear@1000, parallel@100x{1,4}, parallel@1000x{1,4}.
    CHECK(report.cells.size() == 6);
    for (const auto& cell : report.cells) {
        if (cell.method == "linear") CHECK(cell.workers == 1);
        CHECK(cell.min_ns <= cell.median_ns);
    }

    bool found_scaling = false;
    bool found_speedup = false;
    for (const auto& ratio : report.ratios) {
        if (ratio.label.find("linear scaling") != std::string::npos) {
            found_scaling = true;
            CHECK(ratio.value == doctest::Approx(10.0).epsilon(0.05));
        }
        if (ratio.label.find("parallel speedup") != std::string::npos) {
            found_speedup = true;
            CHECK(ratio.value > 1.0);
        }
    }
    CHECK(found_scaling);
    CHECK(found_speedup);
}

TEST_CASE("disagreeing answers abort the report") {
    bench::Plan plan;
    plan.sizes = {100};
    plan.repeats = 3;
    std::vector<bench::Sample> samples = {
        sample("linear", 100, 1, 1, 10, true),
        sample("parallel", 100, 1, 1, 10, false),
    };
    CHECK_THROWS_AS(bench::make_report(plan, samples), MethodDisagreement);
}

TEST_CASE("csv rendering") {
    const std::vector<bench::Sample> samples = {
        sample("linear", 64, 1, 1, 1234, true),
        sample("parallel", 64, 2, 1, 987, true),
    };
    const std::string csv = bench::to_csv(samples);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "method,m,workers,repeat,elapsed_ns,answer");
    std::getline(lines, line);
    CHECK(line == "linear,64,1,1,1234,yes");
    std::getline(lines, line);
    CHECK(line == "parallel,64,2,1,987,yes");
}

TEST_CASE("markdown summary lists cells") {
    bench::Plan plan;
    plan.methods = {"linear"};
    plan.sizes = {64};
    plan.workers = {1};
    plan.repeats = 3;
    plan.p = 2;
    const bench::Report report = bench::run(plan);
    const std::string markdown = bench::to_markdown(report);
    CHECK(markdown.find("| linear | 64 | 1 |") != std::string::npos);
}
