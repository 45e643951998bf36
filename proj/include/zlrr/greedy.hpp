#pragma once

#include <cstdint>
#include <vector>

#include "zlrr/recurrence.hpp"

namespace zlrr {

/// Greedy decomposition of one integer: strictly decreasing indices r_1 > r_2
/// > ... > r_k with sum of Z_{r_i} equal to source_value. At every step the
/// largest index whose term fits is chosen; among equal terms the larger
/// index wins.
struct Decomposition {
    std::vector<std::size_t> indices;
    Int source_value;
};

struct GapList {
    /// g_j = r_{j-1} - r_j for j = 2..k, each >= 1.
    std::vector<std::size_t> gaps;
};

/// Throws TableTooSmall when the largest cached term is <= m. m = 0 yields
/// the empty decomposition.
Decomposition greedy_decompose(const SequenceTable& table, const Int& m);

std::size_t summand_count(const Decomposition& d);

GapList gap_list(const Decomposition& d);

struct PrefixCheckReport {
    Int total = 0;
    Int passes = 0;
    Int failures = 0;
    bool exhaustive = true;
};

/// Verifies, for every m in [Z_N, Z_{N+1}) (exhaustively when the interval
/// has at most 10^6 integers, on a fixed-seed sample of 10^5 otherwise), that
/// the first greedy index is the largest index attaining the maximal term
/// <= m and that the remainder decomposes over strictly smaller indices.
PrefixCheckReport verify_prefix_property(const SequenceTable& table, std::size_t N);

}  // namespace zlrr
