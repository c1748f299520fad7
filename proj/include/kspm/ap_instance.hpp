#ifndef KSPM_AP_INSTANCE_HPP
#define KSPM_AP_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "kspm/config.hpp"
#include "kspm/errors.hpp"

namespace kspm {

/// An avalanche-problem instance: a configuration s in gSM plus a target
/// column k in (m, m+p].  kappa() = k - m is always in (0, p].
class ApInstance {
public:
    ApInstance(SlopeConfig config, std::int64_t k) : config_(std::move(config)), k_(k) {
        if (config_.length() < 1) {
            throw InvalidInput("avalanche-problem instances need at least one column");
        }
        if (!in_gsm(config_)) {
            throw NotInGSM("instance configuration must be stable and monotone");
        }
        const std::int64_t m = config_.length();
        if (k <= m || k > m + config_.p()) {
            throw KOutOfRange("k out of range (|s|, |s|+p]: k = " + std::to_string(k) +
                              ", |s| = " + std::to_string(m) + ", p = " +
                              std::to_string(config_.p()));
        }
    }

    const SlopeConfig& config() const { return config_; }
    std::int64_t k() const { return k_; }
    std::int64_t kappa() const { return k_ - config_.length(); }

private:
    SlopeConfig config_;
    std::int64_t k_;
};

}  // namespace kspm

#endif
