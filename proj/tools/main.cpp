#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kspm/avalanche.hpp"
#include "kspm/bench.hpp"
#include "kspm/config.hpp"
#include "kspm/instances.hpp"
#include "kspm/ncdecider.hpp"
#include "kspm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) {
        throw kspm::InvalidInput("cannot open input file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

kspm::SlopeConfig load_config(const std::string& path) {
    const kspm::SlopeConfig config = kspm::parse_config_auto(read_input(path));
    if (config.p() > kspm::kPWarnThreshold) {
        std::cerr << "warning: p = " << config.p() << " builds 2^p-entry status tables\n";
    }
    return config;
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct DecideOutcome {
    bool answer = false;
    kspm::Status boundary;  // status at m+1: fired flags of columns m-p+1..m
};

DecideOutcome run_decide(const kspm::SlopeConfig& config, std::int64_t k,
                         const std::string& method, int workers) {
    const kspm::ApInstance inst(config, k);
    const std::int64_t kappa = inst.kappa();
    DecideOutcome outcome;
    if (method == "naive" || config.length() <= config.p() + 1) {
        const kspm::Avalanche av = kspm::compute_avalanche(config);
        outcome.boundary = kspm::status_at(av, config.length() + 1);
    } else if (method == "linear") {
        // Slopes p+1..m+p-1 advance the seed to exactly position m+1.
        std::vector<std::int64_t> window;
        window.reserve(static_cast<std::size_t>(config.length() - 2));
        for (std::int64_t i = config.p() + 1; i < config.length() + config.p(); ++i) {
            window.push_back(config.slope(i));
        }
        outcome.boundary =
            kspm::window_advance(window, config.p() + 1, kspm::seed_status(config), config.p())
                .status;
    } else if (method == "parallel") {
        const kspm::TransferFunction mu = kspm::reduce_range(config, workers);
        outcome.boundary =
            kspm::Status{mu.table[kspm::seed_status(config).bits], config.length() + 1};
    } else {
        throw kspm::InvalidInput("unknown method '" + method + "'");
    }
    outcome.answer = outcome.boundary.bit(kappa - 1);
    return outcome;
}

int cmd_decide(const std::string& input, std::int64_t k, const std::string& method, int workers,
               bool json) {
    const kspm::SlopeConfig config = load_config(input);
    const auto start = std::chrono::steady_clock::now();
    const DecideOutcome outcome = run_decide(config, k, method, workers);
    const auto stop = std::chrono::steady_clock::now();
    const auto elapsed_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();

    if (json) {
        nlohmann::json record;
        record["answer"] = outcome.answer;
        record["method"] = method;
        record["k"] = k;
        std::vector<int> boundary;
        for (std::int64_t j = 0; j < config.p(); ++j) {
            boundary.push_back(outcome.boundary.bit(j) ? 1 : 0);
        }
        record["fired_right_boundary"] = boundary;
        record["elapsed_ns"] = elapsed_ns;
        std::cout << record.dump() << '\n';
    } else {
        std::cout << (outcome.answer ? "YES" : "NO") << '\n';
    }
    return kExitOk;
}

int cmd_trace(const std::string& input, const std::string& format, bool show_status,
              bool show_slopes) {
    const kspm::SlopeConfig config = load_config(input);
    const kspm::Avalanche av = kspm::compute_avalanche(config);

    // Replay to capture intermediate slopes when asked for.
    std::vector<std::vector<std::int64_t>> slopes_after;
    if (show_slopes) {
        kspm::SlopeConfig cur = kspm::add_grain(config);
        for (std::int64_t column : av.firings) {
            cur = kspm::fire(cur, column);
            const auto slots = cur.all_slots();
            slopes_after.emplace_back(slots.begin(), slots.end());
        }
    }

    const bool jsonl = format == "jsonl";
    if (!jsonl && av.empty()) {
        std::cout << "avalanche empty\n";
    }
    for (std::size_t t = 0; t < av.firings.size(); ++t) {
        const char* kind = av.kinds[t] == kspm::FiringKind::Peak ? "peak" : "col";
        if (jsonl) {
            nlohmann::json record;
            record["step"] = t + 1;
            record["column"] = av.firings[t];
            record["kind"] = kind;
            if (show_slopes) record["slopes_after"] = slopes_after[t];
            std::cout << record.dump() << '\n';
        } else {
            std::cout << av.firings[t] << ' ' << kind;
            if (show_slopes) {
                std::cout << " |";
                for (std::int64_t v : slopes_after[t]) std::cout << ' ' << v;
            }
            std::cout << '\n';
        }
    }
    if (show_status) {
        for (std::int64_t i = config.p() + 1; i <= config.length() + 1; ++i) {
            const kspm::Status status = kspm::status_at(av, i);
            if (jsonl) {
                nlohmann::json record;
                record["position"] = i;
                std::vector<int> bits;
                for (std::int64_t j = 0; j < config.p(); ++j) bits.push_back(status.bit(j) ? 1 : 0);
                record["status"] = bits;
                std::cout << record.dump() << '\n';
            } else {
                std::cout << "status " << i << ' ' << kspm::format_status(status, config.p())
                          << '\n';
            }
        }
    }
    return kExitOk;
}

int cmd_verify(std::int64_t p, std::int64_t max_len, std::int64_t samples, std::uint64_t seed,
               int workers) {
    if (p > kspm::kPWarnThreshold) {
        std::cerr << "warning: p = " << p << " builds 2^p-entry status tables\n";
    }
    kspm::verify::Options options;
    options.p = p;
    options.max_len = max_len;
    options.samples = samples;
    options.seed = seed;
    options.workers = workers;
    const kspm::verify::Summary summary = kspm::verify::run(options);
    std::cout << kspm::verify::format_summary(summary) << '\n';
    if (summary.clean()) {
        return kExitOk;
    }
    const std::string repro = "kspm-failure.cfg";
    std::ofstream out(repro);
    if (out) {
        out << "# " << summary.witness->detail << '\n';
        if (summary.witness->k > 0) out << "# k = " << summary.witness->k << '\n';
        out << kspm::serialize_config(summary.witness->config);
    }
    std::cerr << "violation: " << summary.witness->detail << "\nreproduction written to "
              << repro << '\n';
    return kExitViolations;
}

int cmd_bench(const kspm::bench::Plan& plan, const std::string& csv_path, bool markdown) {
    const kspm::bench::Report report = kspm::bench::run(plan);
    const std::string csv = kspm::bench::to_csv(report.samples);
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(csv_path);
        if (!out) {
            throw kspm::InvalidInput("cannot write CSV to '" + csv_path + "'");
        }
        out << csv;
    }
    if (markdown) {
        std::cout << kspm::bench::to_markdown(report);
    }
    return kExitOk;
}

int cmd_gen(const kspm::GeneratorSpec& spec, const std::string& out_path) {
    const kspm::SlopeConfig config = kspm::generate(spec);
    const std::string text =
        "# generator: " + kspm::generator_metadata(spec) + "\n" + kspm::serialize_config(config);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw kspm::InvalidInput("cannot write configuration to '" + out_path + "'");
        }
        out << text;
    }
    return kExitOk;
}

std::vector<std::int64_t> parse_size_list(const std::vector<std::string>& items) {
    std::vector<std::int64_t> out;
    for (const auto& item : items) {
        out.push_back(static_cast<std::int64_t>(std::stod(item)));  // accepts 1e6 style
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kadanoff sandpile avalanche toolkit"};
    app.require_subcommand(1);

    // decide
    auto* decide = app.add_subcommand("decide", "Decide whether the avalanche reaches column k");
    std::string decide_input;
    std::int64_t decide_k = 0;
    std::string decide_method = "linear";
    int decide_workers = default_workers();
    bool decide_json = false;
    decide->add_option("--input", decide_input, "configuration file, or '-' for stdin")
        ->required();
    decide->add_option("--k", decide_k, "target column in (|s|, |s|+p]")->required();
    decide->add_option("--method", decide_method, "naive | linear | parallel (default linear)")
        ->check(CLI::IsMember({"naive", "linear", "parallel"}));
    decide->add_option("--workers", decide_workers, "threads for --method parallel");
    decide->add_flag("--json", decide_json, "emit a JSON record instead of YES/NO");

    // trace
    auto* trace = app.add_subcommand("trace", "Print the avalanche firing sequence");
    std::string trace_input;
    std::string trace_format = "text";
    bool trace_show_status = false;
    bool trace_show_slopes = false;
    trace->add_option("--input", trace_input, "configuration file, or '-' for stdin")->required();
    trace->add_option("--format", trace_format, "text | jsonl")
        ->check(CLI::IsMember({"text", "jsonl"}));
    trace->add_flag("--show-status", trace_show_status, "also print statuses at p+1..|s|+1");
    trace->add_flag("--show-slopes", trace_show_slopes, "include slopes after each firing");

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-check the three deciders");
    std::int64_t verify_p = 1;
    std::int64_t verify_max_len = 4;
    std::int64_t verify_samples = 0;
    std::uint64_t verify_seed = 0;
    int verify_workers = default_workers();
    verify->add_option("--p", verify_p, "model parameter")->required();
    verify->add_option("--max-len", verify_max_len, "exhaustive sweep over lengths 1..max-len")
        ->required();
    verify->add_option("--samples", verify_samples, "extra random configurations of length max-len");
    verify->add_option("--seed", verify_seed, "seed for the sampled sweep");
    verify->add_option("--workers", verify_workers, "threads for the parallel decider");

    // bench
    auto* bench = app.add_subcommand("bench", "Time the deciders and emit CSV");
    std::vector<std::string> bench_sizes;
    std::vector<int> bench_workers = {1};
    int bench_repeats = 3;
    std::int64_t bench_p = 3;
    double bench_zero_density = 0.3;
    std::uint64_t bench_seed = 1;
    std::string bench_csv;
    std::vector<std::string> bench_methods = {"linear", "parallel"};
    bool bench_markdown = false;
    bench->add_option("--sizes", bench_sizes, "configuration lengths (1e6 style accepted)")
        ->required()
        ->delimiter(',');
    bench->add_option("--workers", bench_workers, "worker counts for the parallel decider")
        ->delimiter(',');
    bench->add_option("--repeats", bench_repeats, "timed repeats per cell (after 1 warmup)");
    bench->add_option("--p", bench_p, "model parameter");
    bench->add_option("--zero-density", bench_zero_density, "fraction of zero slopes");
    bench->add_option("--seed", bench_seed, "instance seed");
    bench->add_option("--csv", bench_csv, "CSV output path ('-' or empty for stdout)");
    bench->add_option("--methods", bench_methods, "methods to time")->delimiter(',');
    bench->add_flag("--markdown", bench_markdown, "print a Markdown summary after the CSV");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a reproducible random configuration");
    kspm::GeneratorSpec gen_spec;
    std::string gen_out;
    gen->add_option("--p", gen_spec.p, "model parameter")->required();
    gen->add_option("--len", gen_spec.m, "configuration length")->required();
    gen->add_option("--zero-density", gen_spec.zero_density, "fraction of zero slopes");
    gen->add_option("--seed", gen_spec.seed, "generator seed");
    gen->add_option("--out", gen_out, "output path ('-' or empty for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(decide)) {
            return cmd_decide(decide_input, decide_k, decide_method, decide_workers, decide_json);
        }
        if (app.got_subcommand(trace)) {
            return cmd_trace(trace_input, trace_format, trace_show_status, trace_show_slopes);
        }
        if (app.got_subcommand(verify)) {
            return cmd_verify(verify_p, verify_max_len, verify_samples, verify_seed,
                              verify_workers);
        }
        if (app.got_subcommand(bench)) {
            kspm::bench::Plan plan;
            plan.methods = bench_methods;
            plan.sizes = parse_size_list(bench_sizes);
            plan.workers = bench_workers;
            plan.repeats = bench_repeats;
            plan.p = bench_p;
            plan.zero_density = bench_zero_density;
            plan.seed = bench_seed;
            return cmd_bench(plan, bench_csv, bench_markdown);
        }
        if (app.got_subcommand(gen)) {
            return cmd_gen(gen_spec, gen_out);
        }
    } catch (const kspm::KOutOfRange& e) {
        std::cerr << "error: k out of range (|s|, |s|+p]: " << e.what() << '\n';
        return kExitUsage;
    } catch (const kspm::EnumerationTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const kspm::MethodDisagreement& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolations;
    } catch (const kspm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
