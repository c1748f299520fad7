#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kspm/config.hpp"
#include "kspm/instances.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

CliResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string command =
        std::string(KSPM_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = WEXITSTATUS(raw);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(KSPM_FIXTURES_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("decide answers the fixtures") {
    CHECK(run_cli("decide --input " + fixture("e2.cfg") + " --k 8").out == "YES\n");
    CHECK(run_cli("decide --input " + fixture("e2.cfg") + " --k 10").out == "NO\n");

    const CliResult parallel =
        run_cli("decide --input " + fixture("e1.cfg") + " --k 11 --method parallel --workers 4");
    CHECK(parallel.exit_code == 0);
    CHECK(parallel.out == "NO\n");

    const CliResult naive = run_cli("decide --input " + fixture("e1.cfg") + " --k 10 --method naive");
    CHECK(naive.exit_code == 0);
    CHECK(naive.out == "NO\n");
}

TEST_CASE("decide exit codes") {
    const CliResult out_of_range = run_cli("decide --input " + fixture("e1.cfg") + " --k 12");
    CHECK(out_of_range.exit_code == 2);
    CHECK(out_of_range.err.find("k out of range (|s|, |s|+p]") != std::string::npos);

    CHECK(run_cli("decide --input no_such_file.cfg --k 3").exit_code == 3);
    CHECK(run_cli("decide --input " + fixture("e1.cfg")).exit_code == 2);  // missing --k
    CHECK(run_cli("decide --input " + fixture("e1.cfg") + " --k 10 --method warp").exit_code == 2);
}

TEST_CASE("decide --json keeps a stable schema") {
    const CliResult result =
        run_cli("decide --input " + fixture("e1.cfg") + " --k 10 --json");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json record = nlohmann::json::parse(result.out);

    const std::vector<std::string> expected_keys = {"answer", "elapsed_ns",
                                                    "fired_right_boundary", "k", "method"};
    std::vector<std::string> keys;
    for (const auto& [key, value] : record.items()) keys.push_back(key);
    CHECK(keys == expected_keys);  // nlohmann iterates objects in sorted order

    CHECK(record["answer"] == false);
    CHECK(record["method"] == "linear");
    CHECK(record["k"] == 10);
    CHECK(record["fired_right_boundary"] == nlohmann::json::array({0, 0}));
    CHECK(record["elapsed_ns"].get<std::int64_t>() >= 0);
}

TEST_CASE("decide --json boundary flags match the fired set near the edge") {
    const CliResult result =
        run_cli("decide --input " + fixture("e4.cfg") + " --k 6 --method parallel --json");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json record = nlohmann::json::parse(result.out);
    CHECK(record["answer"] == true);
    CHECK(record["fired_right_boundary"] == nlohmann::json::array({1, 1}));  // columns 4 and 5
}

TEST_CASE("decide handles configurations shorter than the status window") {
    // m = 2 < p+1, so every method routes through the brute-force path;
    // boundary flags cover columns 0..2 with virtual columns unfired.
    std::ofstream file("cli_short.tmp.cfg");
    file << "3\n3 3\n";
    file.close();
    for (const std::string method : {"naive", "linear", "parallel"}) {
        const CliResult result =
            run_cli("decide --input cli_short.tmp.cfg --k 4 --method " + method + " --json");
        REQUIRE(result.exit_code == 0);
        const nlohmann::json record = nlohmann::json::parse(result.out);
        CHECK(record["answer"] == true);
        CHECK(record["fired_right_boundary"] == nlohmann::json::array({0, 1, 0}));
    }
    CHECK(run_cli("decide --input cli_short.tmp.cfg --k 3").out == "NO\n");
    std::remove("cli_short.tmp.cfg");
}

TEST_CASE("trace prints firings with peak/col tags") {
    const CliResult result = run_cli("trace --input " + fixture("e2.cfg"));
    CHECK(result.exit_code == 0);
    CHECK(lines_of(result.out) ==
          std::vector<std::string>{"1 peak", "4 peak", "3 col", "6 peak", "5 col"});

    // A configuration whose avalanche is empty after the grain lands.
    std::ofstream quiet("cli_quiet.tmp.cfg");
    quiet << "2\n1 2 2\n";
    quiet.close();
    CHECK(run_cli("trace --input cli_quiet.tmp.cfg").out == "avalanche empty\n");
    std::remove("cli_quiet.tmp.cfg");
}

TEST_CASE("trace --show-status appends statuses") {
    const CliResult result = run_cli("trace --input " + fixture("e1.cfg") + " --show-status");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.out);
    REQUIRE(lines.size() == 2 + 8);  // firings 1,3 then statuses at 3..10
    CHECK(lines[0] == "1 peak");
    CHECK(lines[1] == "3 peak");
    CHECK(lines[2] == "status 3 (1,0)");
    CHECK(lines[3] == "status 4 (0,1)");
    CHECK(lines[4] == "status 5 (1,0)");
    CHECK(lines[5] == "status 6 (0,0)");
    CHECK(lines[9] == "status 10 (0,0)");
}

TEST_CASE("trace --format jsonl emits one record per firing") {
    const CliResult result =
        run_cli("trace --input " + fixture("e2.cfg") + " --format jsonl --show-slopes");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.out);
    REQUIRE(lines.size() == 5);
    const nlohmann::json first = nlohmann::json::parse(lines[0]);
    CHECK(first["step"] == 1);
    CHECK(first["column"] == 1);
    CHECK(first["kind"] == "peak");
    CHECK(first["slopes_after"] ==
          nlohmann::json::array({0, 0, 2, 4, 1, 3, 1, 0, 0, 0}));
    const nlohmann::json last = nlohmann::json::parse(lines[4]);
    CHECK(last["step"] == 5);
    CHECK(last["column"] == 5);
    CHECK(last["kind"] == "col");
}

TEST_CASE("verify reports exhaustive sweeps") {
    const CliResult tiny = run_cli("verify --p 1 --max-len 2");
    CHECK(tiny.exit_code == 0);
    CHECK(tiny.out.find("4 configs x all k: 0 mismatches") != std::string::npos);

    const CliResult sampled = run_cli("verify --p 3 --max-len 4 --samples 20 --seed 9");
    CHECK(sampled.exit_code == 0);
    CHECK(sampled.out.find("sampled") != std::string::npos);

    const CliResult full = run_cli("verify --p 2 --max-len 8");
    CHECK(full.exit_code == 0);
    CHECK(full.out.find("6561 configs x all k: 0 mismatches") != std::string::npos);
}

TEST_CASE("gen writes a parseable reproducible configuration") {
    const std::string path = "cli_gen.tmp.cfg";
    const CliResult result =
        run_cli("gen --p 3 --len 100 --zero-density 0.3 --seed 7 --out " + path);
    CHECK(result.exit_code == 0);

    const std::string text = slurp(path);
    CHECK(text.find("# generator: " + std::string(kspm::kGeneratorAlgorithm)) !=
          std::string::npos);
    const kspm::SlopeConfig config = kspm::parse_config(text);
    CHECK(config.p() == 3);
    CHECK(config.length() == 100);
    CHECK(kspm::in_gsm(config));

    // Identical seed, identical file.
    const std::string again = "cli_gen2.tmp.cfg";
    run_cli("gen --p 3 --len 100 --zero-density 0.3 --seed 7 --out " + again);
    CHECK(slurp(again) == text);
    std::remove(path.c_str());
    std::remove(again.c_str());

    CHECK(run_cli("gen --p 3 --len 10 --out /nonexistent-dir/x.cfg").exit_code == 3);
}

TEST_CASE("bench emits the CSV grid") {
    const std::string path = "cli_bench.tmp.csv";
    const CliResult result = run_cli(
        "bench --sizes 32,64 --workers 1,2 --repeats 2 --p 2 --seed 3 --csv " + path);
    CHECK(result.exit_code == 0);

    const auto rows = lines_of(slurp(path));
    REQUIRE(rows.size() == 17);  // header + 2 methods x 2 sizes x 2 workers x 2 repeats
    CHECK(rows[0] == "method,m,workers,repeat,elapsed_ns,answer");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK((rows[i].rfind("linear,", 0) == 0 || rows[i].rfind("parallel,", 0) == 0));
    }
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("decide --nope").exit_code == 2);
}
