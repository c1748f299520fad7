#ifndef KSPM_INSTANCES_HPP
#define KSPM_INSTANCES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kspm/config.hpp"

namespace kspm {

/// Identifies the random source so generated corpora stay reproducible.
inline constexpr const char* kGeneratorAlgorithm = "mt19937_64/v1";

/// Parses the text format: first token is p, every following token a slope.
/// Blank lines and lines starting with '#' are ignored.  Raises ParseError
/// (with line/column) on malformed integers, a missing p, or p < 1.
SlopeConfig parse_config(const std::string& text);

/// Two-line text form: "p\ns_1 ... s_m\n" (real slopes only).
std::string serialize_config(const SlopeConfig& s);

/// JSON object {"p": int, "slopes": [int, ...]}.
SlopeConfig parse_config_json(const std::string& text);
std::string serialize_config_json(const SlopeConfig& s);

/// Dispatches on the leading non-space character ('{' means JSON).
SlopeConfig parse_config_auto(const std::string& text);

/// Seeded random gSM source: each slope is 0 with probability zero_density,
/// otherwise uniform on 1..p.  Identical specs give identical configs.
struct GeneratorSpec {
    std::int64_t p = 1;
    std::int64_t m = 0;
    double zero_density = 0.0;
    std::uint64_t seed = 0;
};

SlopeConfig generate(const GeneratorSpec& spec);

/// "algorithm seed=... p=... len=... zero_density=..." line for output headers.
std::string generator_metadata(const GeneratorSpec& spec);

/// Streams all (p+1)^m slope vectors of length m in lexicographic order.
/// Construction fails with EnumerationTooLarge when (p+1)^m > 10^7.
class GsmEnumerator {
public:
    GsmEnumerator(std::int64_t p, std::int64_t m);

    std::uint64_t total() const { return total_; }

    /// Next configuration, or nullopt when exhausted.
    std::optional<SlopeConfig> next();

private:
    std::int64_t p_;
    std::int64_t m_;
    std::uint64_t total_;
    std::uint64_t produced_ = 0;
    std::vector<std::int64_t> current_;
};

/// A named configuration with its expected avalanche facts, as stored under
/// fixtures/<name>.cfg + fixtures/<name>.expected.json.
struct Fixture {
    std::string name;
    SlopeConfig config;
    std::vector<std::int64_t> fired;
    std::map<std::int64_t, bool> answers;
};

Fixture load_fixture(const std::string& directory, const std::string& name);

}  // namespace kspm

#endif
