#include "kspm/verify.hpp"

#include <set>
#include <sstream>

#include "kspm/avalanche.hpp"
#include "kspm/instances.hpp"
#include "kspm/ncdecider.hpp"

namespace kspm::verify {

namespace {

/// Checks one configuration; returns a description of the first violation.
std::optional<std::string> check_config(const SlopeConfig& config, const Deciders& deciders,
                                        std::uint64_t& checks, std::optional<std::int64_t>& bad_k) {
    const Avalanche av = compute_avalanche(config);  // classify() runs inside

    std::set<std::int64_t> seen(av.firings.begin(), av.firings.end());
    if (seen.size() != av.firings.size()) {
        return "duplicate firing in the avalanche";
    }
    if (!av.firings.empty() && av.firings.front() != 1) {
        return "avalanche does not start at column 1";
    }
    const PeakLocalityReport locality = check_peak_locality(av, config);
    if (!locality.ok()) {
        std::ostringstream out;
        out << "peak locality violated at column " << locality.violations.front().peak
            << ": expected " << locality.violations.front().expected << ", got "
            << locality.violations.front().got;
        return out.str();
    }
    if (!check_fired_fixed_point(config, av.fired_set)) {
        return "fired set fails the fixed-point characterization";
    }

    for (std::int64_t k = config.length() + 1; k <= config.length() + config.p(); ++k) {
        const ApInstance inst(config, k);
        const bool naive = deciders.naive(inst);
        const bool linear = deciders.linear(inst);
        const bool parallel = deciders.parallel(inst);
        ++checks;
        if (naive != linear || naive != parallel) {
            std::ostringstream out;
            out << "deciders disagree at k = " << k << ": naive=" << naive
                << " linear=" << linear << " parallel=" << parallel;
            bad_k = k;
            return out.str();
        }
    }
    return std::nullopt;
}

}  // namespace

Deciders default_deciders(int workers) {
    Deciders deciders;
    deciders.naive = [](const ApInstance& inst) { return decide_naive(inst); };
    deciders.linear = [](const ApInstance& inst) { return decide_linear(inst); };
    deciders.parallel = [workers](const ApInstance& inst) {
        return decide_parallel(inst, workers);
    };
    return deciders;
}

Summary run(const Options& options, const Deciders& deciders) {
    Summary summary;

    auto visit = [&](const SlopeConfig& config, Summary::Line& line) {
        ++line.configs;
        ++summary.total_configs;
        std::optional<std::int64_t> bad_k;
        std::optional<std::string> failure;
        try {
            failure = check_config(config, deciders, summary.total_checks, bad_k);
        } catch (const Error& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure) {
            ++line.mismatches;
            ++summary.violations;
            if (!summary.witness) {
                summary.witness = Witness{config, bad_k.value_or(0), *failure};
            }
        }
    };

    for (std::int64_t m = 1; m <= options.max_len; ++m) {
        Summary::Line line;
        line.label = "m=" + std::to_string(m) + " exhaustive";
        GsmEnumerator enumerator(options.p, m);
        while (auto config = enumerator.next()) {
            visit(*config, line);
        }
        summary.lines.push_back(std::move(line));
    }

    if (options.samples > 0) {
        Summary::Line line;
        line.label = "m=" + std::to_string(options.max_len) + " sampled";
        for (std::int64_t i = 0; i < options.samples; ++i) {
            GeneratorSpec spec;
            spec.p = options.p;
            spec.m = options.max_len;
            spec.zero_density = 0.3;
            spec.seed = options.seed + static_cast<std::uint64_t>(i);
            visit(generate(spec), line);
        }
        summary.lines.push_back(std::move(line));
    }

    return summary;
}

std::string format_summary(const Summary& summary) {
    std::ostringstream out;
    for (const auto& line : summary.lines) {
        out << line.label << ": " << line.configs << " configs" << " x all k: "
            << line.mismatches << " mismatches\n";
    }
    out << summary.total_configs << " configs x all k: " << summary.violations << " mismatches";
    return out.str();
}

}  // namespace kspm::verify
