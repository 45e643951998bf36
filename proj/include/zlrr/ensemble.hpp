#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zlrr/enumeration.hpp"
#include "zlrr/greedy.hpp"
#include "zlrr/rng.hpp"

namespace zlrr {

/// Strictly decreasing index list a decomposition may begin with.
struct PrefixPattern {
    std::vector<std::size_t> indices;

    std::size_t terminal_index() const { return indices.back(); }
};

/// Statistic of a decomposition that depends only on the presence/absence of
/// summands at window_length consecutive indices. The window bits are packed
/// little-endian from the low end of the window, so bit t holds the index
/// (window start + t).
struct LocalStatistic {
    std::size_t window_length = 0;
    std::function<double(std::uint64_t)> evaluator;
    std::string name;
};

/// Indicator that some pair of successive present summands inside the window
/// is separated by at least 2 indices.
LocalStatistic gap_at_least2_statistic(std::size_t window_length);
/// Indicator of a summand at the lowest window index.
LocalStatistic present_at_offset0_statistic(std::size_t window_length);
/// Constant 1, for calibration.
LocalStatistic constant_one_statistic(std::size_t window_length);

struct EnsembleEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    enum class Tag { Micro, Canonical } tag = Tag::Micro;
    bool exact = false;
};

/// n integers uniform on [Z_N, Z_{N+1}), exact rejection sampling,
/// deterministic per seed. Throws EmptyInterval when Z_{N+1} = Z_N.
std::vector<Int> sample_microcanonical(const SequenceTable& table, std::size_t N,
                                       std::uint64_t seed, std::size_t n);

/// One draw from the stationary ensemble on decreasing index patterns: the
/// pattern starts at the horizon index and falls by independent decrements
/// g >= 1 with P(g) = (1 - 1/lambda1) lambda1^{-(g-1)}, truncated below
/// index 0. The weight of a realized prefix is then proportional to
/// lambda1^{-(depth of its terminal index)}.
std::vector<std::size_t> sample_canonical(const RootInfo& info, std::size_t horizon,
                                          RandomStream& rng);
std::vector<std::size_t> sample_canonical(const RootInfo& info, std::size_t horizon,
                                          std::uint64_t seed);

enum class EstimateMode { Exact, Sampled };

struct SampleBudget {
    std::uint64_t max_exact_scan = 1'000'000;
    std::uint64_t n_samples = 100'000;
    std::uint64_t seed = 1;
};

/// Fraction of m in [Z_N, Z_{N+1}) whose greedy decomposition begins with p
/// (the first indices equal p, a longer decomposition still counts).
/// Microcanonical only. Exact mode scans the interval exhaustively.
EnsembleEstimate prefix_frequency(const SequenceTable& table, std::size_t N,
                                  const PrefixPattern& p, EstimateMode mode,
                                  const SampleBudget& budget);

struct EnsembleSpec {
    EnsembleEstimate::Tag tag = EnsembleEstimate::Tag::Micro;
    /// Micro: interval index N. Canonical: horizon (top index).
    std::size_t top_index = 0;
    /// The window covers indices [top - offset - W + 1, top - offset].
    std::size_t window_offset = 1;
};

/// Expectation of F over the chosen ensemble. Micro is exact when the
/// interval fits the scan budget and sampled otherwise; canonical is always
/// sampled.
EnsembleEstimate expectation_local(const SequenceTable& table, const RootInfo& info,
                                   const LocalStatistic& F, const EnsembleSpec& ensemble,
                                   const SampleBudget& budget);

struct ConcentrationSample {
    std::size_t sample_index = 0;
    Int N;
    Int d;
    double log_d_over_L = 0.0;
};

struct ConcentrationReport {
    std::size_t L = 0;
    std::vector<ConcentrationSample> samples;
    double mean = 0.0;
    double sd = 0.0;
    /// Number of sampled N with d(N) = 0 (each one is a finding; none are
    /// expected since the greedy string itself is legal).
    std::uint64_t zero_count_findings = 0;
    /// Reference constants the mean is diffed against: log(2/lambda1) and
    /// log(rho/lambda1) with rho the measured legal-string growth ratio.
    double measured_growth_ratio = 0.0;
    double ref_log_2_over_lambda1 = 0.0;
    double ref_log_growth_over_lambda1 = 0.0;
};

/// Samples n integers uniform in [Z_L, Z_{L+1}), counts their legal
/// decompositions over indices 0..L+3 and summarizes log d(N) / L.
ConcentrationReport concentration_experiment(const SequenceTable& table, std::size_t L,
                                             std::size_t n_samples, std::uint64_t seed,
                                             const ForbiddenPattern& p = {});

}  // namespace zlrr
