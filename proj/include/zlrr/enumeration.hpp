#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "zlrr/recurrence.hpp"

namespace zlrr {

/// Contiguous 0/1 block that a coefficient string must avoid, written in
/// index-increasing order. The default block 1100 encodes the rewrite
/// eps_i = eps_{i+1} = 1, eps_{i+2} = eps_{i+3} = 0 that the recurrence
/// makes reducible.
struct ForbiddenPattern {
    std::vector<int> bits{1, 1, 0, 0};

    std::size_t length() const { return bits.size(); }
    /// Window content (bits after the first) packed little-endian, i.e.
    /// bit j-1 holds pattern position j.
    unsigned window_value() const;
    unsigned first_bit() const { return static_cast<unsigned>(bits.front()); }
};

ForbiddenPattern parse_pattern(const std::string& digits);

/// 0/1 coefficient string over sequence indices, bits[i] = eps_i, indices
/// increasing rightward.
struct CoefficientString {
    std::vector<int> bits;
};

/// True when the string contains no contiguous occurrence of the pattern.
bool is_legal(const CoefficientString& s, const ForbiddenPattern& p);

/// Exact count of legal strings of length L, by the sliding-window state
/// recursion. Cross-checked against brute force in the tests.
Int count_legal_strings(std::size_t L, const ForbiddenPattern& p);

/// Dense non-negative integer matrix indexed by bit windows.
struct TransferMatrix {
    std::size_t n = 0;
    std::vector<std::vector<Int>> entries;

    std::vector<Int> row_sums() const;
    bool operator==(const TransferMatrix& other) const;
};

/// Window-to-window transition matrix for strings avoiding p. States are the
/// last length(p)-1 written bits, oldest bit most significant; appending b to
/// state u moves to ((u << 1) | b) masked to the window, and exactly the
/// transitions that would complete p are dropped. Requires pattern length
/// >= 2.
TransferMatrix build_transfer_matrix(const ForbiddenPattern& p);

/// The 8x8 matrix exactly as printed in the text under study. Differs from
/// build_transfer_matrix on the row of state 110; kept verbatim as a
/// first-class object and diffed, never trusted silently.
TransferMatrix paper_matrix();

/// Exact characteristic polynomial det(xI - T) by the Samuelson-Berkowitz
/// division-free scheme.
IntPolynomial char_poly_exact(const TransferMatrix& T);

/// Exact det(xI - T) at one integer point by cofactor expansion. Independent
/// cross-check for char_poly_exact; exponential in the dimension, fine at
/// size 8.
Int char_poly_at(const TransferMatrix& T, const Int& x);

/// Spectral radius by power iteration with a Rayleigh-quotient convergence
/// test. Throws NoConvergence after the iteration cap.
double perron_eigenvalue(const TransferMatrix& T, double tol = 1e-12);

/// Number of subsets S of {0..index_cap} with sum of Z_i over S equal to N
/// whose indicator string over 0..index_cap is legal. High-to-low
/// branch-and-bound with suffix-sum pruning; no memo tables. index_cap is
/// capped at 45 (search budget); beyond that throws BudgetExceeded.
Int count_decompositions(const SequenceTable& table, const Int& N, const ForbiddenPattern& p,
                         std::size_t index_cap);

inline constexpr std::size_t kIndexCapLimit = 45;

struct DecompositionCountReport {
    std::size_t L = 0;
    /// Exact number of legal strings of length L.
    Int D_strings = 0;
    /// Sum of d(k) over k < Z_L with indices restricted to 0..L-1.
    Int D_sum_d = 0;
    Rat average_d;
    /// Sum of d(k)^2 over the same range.
    Int second_moment = 0;
    /// count_legal_strings(l) / count_legal_strings(l-1) for l = 2..L.
    std::vector<double> growth_ratio_series;
    /// Per-value counts over every value reachable with indices < L. Sums to
    /// D_strings; keys at or above Z_L are the strings no integer below Z_L
    /// can claim.
    std::map<Int, Int> value_histogram;
};

/// Enumerates the legal strings of length L, histograms their values, and
/// reports the count aggregates. D_strings >= D_sum_d is not assumed; both
/// are first-class. Throws BudgetExceeded when the string count is out of
/// budget.
DecompositionCountReport total_decompositions(const SequenceTable& table, std::size_t L,
                                              const ForbiddenPattern& p);

}  // namespace zlrr
