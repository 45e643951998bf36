#pragma once

#include <cstdint>
#include <random>

#include "zlrr/bigint.hpp"

namespace zlrr {

/// Deterministic random stream. Streams with the same seed and stream id are
/// identical on every platform (mt19937_64 output is fixed by the standard).
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform53() { return (engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), exact, by rejection on the smallest
    /// power-of-two cover of n. No modulo bias.
    Int uniform_below(const Int& n);

    /// Uniform 64-bit integer in [0, n), same rejection scheme.
    std::uint64_t uniform_below_u64(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

/// Number of logical shards every parallel sampling job is split into.
/// Fixed so results never depend on the worker count.
inline constexpr unsigned kSampleShards = 16;

}  // namespace zlrr
