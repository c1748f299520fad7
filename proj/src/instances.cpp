#include "kspm/instances.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace kspm {

namespace {

struct Token {
    std::string text;
    std::int64_t line;
    std::int64_t column;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::int64_t line_number = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++line_number;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[pos]))) {
                ++pos;
                continue;
            }
            std::size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) {
                ++end;
            }
            tokens.push_back({line.substr(pos, end - pos), line_number,
                              static_cast<std::int64_t>(pos + 1)});
            pos = end;
        }
    }
    return tokens;
}

std::int64_t parse_integer(const Token& token) {
    std::int64_t value = 0;
    const char* begin = token.text.data();
    const char* end = begin + token.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("malformed integer '" + token.text + "'", token.line, token.column);
    }
    return value;
}

}  // namespace

SlopeConfig parse_config(const std::string& text) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) {
        throw ParseError("missing p line", 1, 1);
    }
    const std::int64_t p = parse_integer(tokens[0]);
    if (p < 1) {
        throw ParseError("parameter p must be >= 1, got " + std::to_string(p), tokens[0].line,
                         tokens[0].column);
    }
    std::vector<std::int64_t> slopes;
    slopes.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        slopes.push_back(parse_integer(tokens[i]));
    }
    return SlopeConfig(p, std::move(slopes));
}

std::string serialize_config(const SlopeConfig& s) {
    std::ostringstream out;
    out << s.p() << '\n';
    const auto slopes = s.real_slopes();
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (i > 0) out << ' ';
        out << slopes[i];
    }
    out << '\n';
    return out.str();
}

SlopeConfig parse_config_json(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1, static_cast<std::int64_t>(e.byte));
    }
    if (!parsed.is_object() || !parsed.contains("p") || !parsed.contains("slopes")) {
        throw ParseError("expected an object with fields \"p\" and \"slopes\"", 1, 1);
    }
    if (!parsed["p"].is_number_integer()) {
        throw ParseError("field \"p\" must be an integer", 1, 1);
    }
    const std::int64_t p = parsed["p"].get<std::int64_t>();
    if (p < 1) {
        throw ParseError("parameter p must be >= 1, got " + std::to_string(p), 1, 1);
    }
    if (!parsed["slopes"].is_array()) {
        throw ParseError("field \"slopes\" must be an array", 1, 1);
    }
    std::vector<std::int64_t> slopes;
    slopes.reserve(parsed["slopes"].size());
    for (const auto& entry : parsed["slopes"]) {
        if (!entry.is_number_integer()) {
            throw ParseError("slopes must be integers", 1, 1);
        }
        slopes.push_back(entry.get<std::int64_t>());
    }
    return SlopeConfig(p, std::move(slopes));
}

std::string serialize_config_json(const SlopeConfig& s) {
    nlohmann::json out;
    out["p"] = s.p();
    const auto slopes = s.real_slopes();
    out["slopes"] = std::vector<std::int64_t>(slopes.begin(), slopes.end());
    return out.dump();
}

SlopeConfig parse_config_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_config_json(text);
        break;
    }
    return parse_config(text);
}

SlopeConfig generate(const GeneratorSpec& spec) {
    if (spec.p < 1) {
        throw InvalidInput("parameter p must be >= 1, got " + std::to_string(spec.p));
    }
    if (spec.m < 0) {
        throw InvalidInput("length must be >= 0, got " + std::to_string(spec.m));
    }
    if (spec.zero_density < 0.0 || spec.zero_density > 1.0) {
        throw InvalidInput("zero_density must lie in [0, 1]");
    }
    // std::mt19937_64 output is pinned by the standard; the mappings below
    // avoid std::uniform_*_distribution, whose results vary across library
    // implementations.
    std::mt19937_64 rng(spec.seed);
    std::vector<std::int64_t> slopes(static_cast<std::size_t>(spec.m));
    for (auto& slope : slopes) {
        const double coin = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (coin < spec.zero_density) {
            slope = 0;
        } else {
            slope = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(spec.p));
        }
    }
    return SlopeConfig(spec.p, std::move(slopes));
}

std::string generator_metadata(const GeneratorSpec& spec) {
    std::ostringstream out;
    out << kGeneratorAlgorithm << " seed=" << spec.seed << " p=" << spec.p << " len=" << spec.m
        << " zero_density=" << spec.zero_density;
    return out.str();
}

GsmEnumerator::GsmEnumerator(std::int64_t p, std::int64_t m) : p_(p), m_(m) {
    constexpr std::uint64_t kLimit = 10'000'000;
    if (p < 1) throw InvalidInput("parameter p must be >= 1, got " + std::to_string(p));
    if (m < 0) throw InvalidInput("length must be >= 0, got " + std::to_string(m));
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < m; ++i) {
        total *= static_cast<std::uint64_t>(p + 1);
        if (total > kLimit) {
            throw EnumerationTooLarge("(p+1)^m exceeds the 10^7 enumeration guard");
        }
    }
    total_ = total;
    current_.assign(static_cast<std::size_t>(m), 0);
}

std::optional<SlopeConfig> GsmEnumerator::next() {
    if (produced_ == total_) return std::nullopt;
    SlopeConfig config(p_, current_);
    ++produced_;
    // Odometer increment, rightmost slope least significant.
    for (std::size_t i = current_.size(); i-- > 0;) {
        if (current_[i] < p_) {
            ++current_[i];
            break;
        }
        current_[i] = 0;
    }
    return config;
}

Fixture load_fixture(const std::string& directory, const std::string& name) {
    const std::string cfg_path = directory + "/" + name + ".cfg";
    std::ifstream cfg_file(cfg_path);
    if (!cfg_file) {
        throw InvalidInput("cannot open fixture " + cfg_path);
    }
    std::stringstream cfg_text;
    cfg_text << cfg_file.rdbuf();

    const std::string expected_path = directory + "/" + name + ".expected.json";
    std::ifstream expected_file(expected_path);
    if (!expected_file) {
        throw InvalidInput("cannot open fixture " + expected_path);
    }
    nlohmann::json expected = nlohmann::json::parse(expected_file);

    Fixture fixture;
    fixture.name = name;
    fixture.config = parse_config(cfg_text.str());
    fixture.fired = expected.at("fired").get<std::vector<std::int64_t>>();
    for (const auto& [key, value] : expected.at("answers").items()) {
        fixture.answers[std::stoll(key)] = value.get<bool>();
    }
    return fixture;
}

}  // namespace kspm
