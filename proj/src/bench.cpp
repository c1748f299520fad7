#include "kspm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "kspm/ap_instance.hpp"
#include "kspm/avalanche.hpp"
#include "kspm/instances.hpp"
#include "kspm/ncdecider.hpp"

namespace kspm::bench {

namespace {

bool run_method(const std::string& method, const ApInstance& inst, int workers) {
    if (method == "naive") return decide_naive(inst);
    if (method == "linear") return decide_linear(inst);
    if (method == "parallel") return decide_parallel(inst, workers);
    throw InvalidInput("unknown method '" + method + "'");
}

void validate(const Plan& plan) {
    if (plan.methods.empty() || plan.sizes.empty() || plan.workers.empty()) {
        throw InvalidInput("bench plan needs at least one method, size, and worker count");
    }
    if (plan.repeats < 1) {
        throw InvalidInput("bench repeats must be >= 1");
    }
    for (std::int64_t m : plan.sizes) {
        if (m < plan.p + 2) {
            throw InvalidInput("bench sizes must be >= p+2 = " + std::to_string(plan.p + 2));
        }
    }
    for (int w : plan.workers) {
        if (w < 1) throw InvalidInput("worker counts must be >= 1");
    }
}

/// Answers within one instance (one size) must agree across all rows.
void require_agreement(const Plan& plan, const std::vector<Sample>& samples) {
    std::map<std::int64_t, std::pair<std::string, bool>> first_answer;
    for (const auto& sample : samples) {
        auto [it, inserted] =
            first_answer.try_emplace(sample.m, std::make_pair(sample.method, sample.answer));
        if (!inserted && it->second.second != sample.answer) {
            GeneratorSpec spec{plan.p, sample.m, plan.zero_density, plan.seed};
            throw MethodDisagreement("methods disagree on m = " + std::to_string(sample.m) +
                                     " (" + it->second.first + " vs " + sample.method +
                                     "); witness: " + generator_metadata(spec));
        }
    }
}

std::int64_t median_of(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

}  // namespace

std::vector<Sample> collect_samples(const Plan& plan) {
    validate(plan);
    std::vector<Sample> samples;
    for (std::int64_t m : plan.sizes) {
        GeneratorSpec spec{plan.p, m, plan.zero_density, plan.seed};
        const SlopeConfig config = generate(spec);
        const ApInstance inst(config, m + 1);
        for (const auto& method : plan.methods) {
            for (int workers : plan.workers) {
                run_method(method, inst, workers);  // warmup
                for (int repeat = 1; repeat <= plan.repeats; ++repeat) {
                    const auto start = std::chrono::steady_clock::now();
                    const bool answer = run_method(method, inst, workers);
                    const auto stop = std::chrono::steady_clock::now();
                    Sample sample;
                    sample.method = method;
                    sample.m = m;
                    sample.workers = workers;
                    sample.repeat = repeat;
                    sample.elapsed_ns =
                        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
                    sample.answer = answer;
                    samples.push_back(std::move(sample));
                }
            }
        }
        require_agreement(plan, samples);  // abort before timing the next size
    }
    return samples;
}

Report make_report(const Plan& plan, std::vector<Sample> samples) {
    require_agreement(plan, samples);
    Report report;
    report.samples = std::move(samples);
    if (plan.repeats < 3) return report;  // medians need at least 3 points

    // Key: method, m, workers (workers pinned to 1 for linear/naive scans).
    std::map<std::tuple<std::string, std::int64_t, int>, std::vector<std::int64_t>> groups;
    for (const auto& sample : report.samples) {
        const int workers = sample.method == "parallel" ? sample.workers : 1;
        groups[{sample.method, sample.m, workers}].push_back(sample.elapsed_ns);
    }
    for (const auto& [key, timings] : groups) {
        Cell cell;
        cell.method = std::get<0>(key);
        cell.m = std::get<1>(key);
        cell.workers = std::get<2>(key);
        cell.median_ns = median_of(timings);
        cell.min_ns = *std::min_element(timings.begin(), timings.end());
        report.cells.push_back(std::move(cell));
    }

    auto median_for = [&](const std::string& method, std::int64_t m,
                          int workers) -> const Cell* {
        for (const auto& cell : report.cells) {
            if (cell.method == method && cell.m == m && cell.workers == workers) return &cell;
        }
        return nullptr;
    };

    std::vector<std::int64_t> sizes = plan.sizes;
    std::sort(sizes.begin(), sizes.end());
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        const Cell* small = median_for("linear", sizes[i], 1);
        const Cell* large = median_for("linear", sizes[i + 1], 1);
        if (small && large && small->median_ns > 0) {
            report.ratios.push_back({"linear scaling m=" + std::to_string(sizes[i]) + "->" +
                                         std::to_string(sizes[i + 1]),
                                     static_cast<double>(large->median_ns) /
                                         static_cast<double>(small->median_ns)});
        }
    }
    std::vector<int> workers = plan.workers;
    std::sort(workers.begin(), workers.end());
    for (std::int64_t m : sizes) {
        const Cell* base = median_for("parallel", m, workers.front());
        if (!base) continue;
        for (std::size_t i = 1; i < workers.size(); ++i) {
            const Cell* cell = median_for("parallel", m, workers[i]);
            if (cell && cell->median_ns > 0) {
                report.ratios.push_back({"parallel speedup m=" + std::to_string(m) + " w=" +
                                             std::to_string(workers.front()) + "->" +
                                             std::to_string(workers[i]),
                                         static_cast<double>(base->median_ns) /
                                             static_cast<double>(cell->median_ns)});
            }
        }
    }
    return report;
}

Report run(const Plan& plan) { return make_report(plan, collect_samples(plan)); }

std::string to_csv(const std::vector<Sample>& samples) {
    std::ostringstream out;
    out << "method,m,workers,repeat,elapsed_ns,answer\n";
    for (const auto& sample : samples) {
        out << sample.method << ',' << sample.m << ',' << sample.workers << ',' << sample.repeat
            << ',' << sample.elapsed_ns << ',' << (sample.answer ? "yes" : "no") << '\n';
    }
    return out.str();
}

std::string to_markdown(const Report& report) {
    std::ostringstream out;
    out << "| method | m | workers | median (ns) | min (ns) |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& cell : report.cells) {
        out << "| " << cell.method << " | " << cell.m << " | " << cell.workers << " | "
            << cell.median_ns << " | " << cell.min_ns << " |\n";
    }
    if (!report.ratios.empty()) {
        out << "\n";
        for (const auto& ratio : report.ratios) {
            out << "- " << ratio.label << ": " << ratio.value << "\n";
        }
    }
    return out.str();
}

}  // namespace kspm::bench
