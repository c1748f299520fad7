#ifndef KSPM_TESTS_HELPERS_HPP
#define KSPM_TESTS_HELPERS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "kspm/config.hpp"

namespace kspm::testing {

inline std::vector<std::int64_t> vec(std::span<const std::int64_t> span) {
    return {span.begin(), span.end()};
}

inline SlopeConfig make_config(std::int64_t p, std::vector<std::int64_t> slopes) {
    return SlopeConfig(p, std::move(slopes));
}

}  // namespace kspm::testing

#endif
