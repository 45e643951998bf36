#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zlrr/recurrence.hpp"

namespace zlrr {

/// Knobs shared by every subcommand. A run is reproducible from these plus
/// the subcommand-specific flags; `serialize_config` renders the key=value
/// form accepted back through --config.
struct RunConfig {
    std::vector<unsigned long> coefficients{0, 1, 1};
    std::vector<std::string> initial_terms{"1", "2", "3"};
    std::uint64_t seed = 1;
    std::uint64_t samples = 100'000;
    /// 0 means auto (ZLRR_WORKERS, then hardware concurrency).
    unsigned workers = 0;
    std::string out_path;

    ZlrrSpec spec() const;
};

std::string serialize_config(const RunConfig& config);

}  // namespace zlrr
