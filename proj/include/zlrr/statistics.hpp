#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "zlrr/greedy.hpp"

namespace zlrr {

/// Exact counts of summand numbers k(m) over m in [0, Z_N).
struct SummandDistribution {
    std::size_t N = 0;
    std::map<std::size_t, Int> counts;
    Int total = 0;
};

enum class DistributionPath {
    /// Per-integer greedy enumeration. The oracle.
    Enumeration,
    /// Interval splitting on the largest term below the right endpoint.
    /// Fast, exact, cross-checked against the oracle.
    IntervalDp,
};

/// Budget for exhaustive interval scans (number of integers).
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000ull;

SummandDistribution exact_summand_distribution(const SequenceTable& table, std::size_t N,
                                               DistributionPath path = DistributionPath::IntervalDp);

/// Builds the distribution by the three-term coefficient recurrence
/// G_{N+1}(y) = G_N(y) + y (G_{N-1}(y) + G_{N-2}(y)), seeded with the exact
/// distributions for N = 0..2. Report-only path: its total G_N(1) does not
/// reproduce Z_N, which is exactly why it never feeds other computations.
/// Requires the default recurrence shape (order 3, c = 0,1,1); N <= 2 returns
/// the exact seed.
SummandDistribution gf_recurrence_distribution(const SequenceTable& table, std::size_t N);

struct MomentSummary {
    Rat mean;
    Rat variance;
    std::size_t n_label = 0;
};

/// Exact rational mean and variance. Throws EmptyDistribution.
MomentSummary moments(const SummandDistribution& dist);

/// Two-sided Kolmogorov-Smirnov distance between the standardized summand
/// count and the standard normal, with the empirical CDF evaluated on both
/// sides of every jump. Throws DegenerateDistribution when variance is zero.
double ks_vs_gaussian(const SummandDistribution& dist);

struct SlopeFit {
    double mean_slope = 0.0;
    double var_slope = 0.0;
};

/// Least-squares slopes of mean and variance against N. Throws TooFewPoints
/// for fewer than 3 points.
SlopeFit slope_fit(const std::vector<std::pair<std::size_t, MomentSummary>>& series);

/// Pooled gap counts over all greedy decompositions of m in [Z_N, Z_{N+1}).
struct GapHistogram {
    std::size_t N = 0;
    std::map<std::size_t, Int> counts;
    Int total_gaps = 0;
};

GapHistogram exact_gap_distribution(const SequenceTable& table, std::size_t N);

struct GeometricFit {
    /// Negated slope of the log-frequency fit; geometric decay at ratio
    /// 1/lambda means rate close to log lambda.
    double rate = 0.0;
    double r_squared = 0.0;
    /// exp(intercept), the fitted frequency prefactor.
    double prefactor = 0.0;
    std::size_t bins_used = 0;
};

/// Least-squares fit of log P(g = k) against k over the nonzero bins in
/// [k_min, k_max]. Throws TooFewBins when fewer than 3 such bins exist.
GeometricFit fit_geometric_decay(const GapHistogram& hist, std::size_t k_min, std::size_t k_max);

/// Constants claimed by the text under study, stored verbatim and only ever
/// diffed against measurements.
struct ReportConstants {
    static constexpr double c1_paper = 0.288675;
    /// Value of the claimed closed form 1/(lambda1 (3 lambda1^2 - 1)).
    static double c1_formula(double lambda1) { return 1.0 / (lambda1 * (3.0 * lambda1 * lambda1 - 1.0)); }
    static constexpr double c2_paper = 0.079578;
    /// Value of the claimed closed form lambda1^2 c1/(lambda1-1)^2 - c1^2,
    /// with c1 the closed-form value above.
    static double c2_formula(double lambda1) {
        double c1 = c1_formula(lambda1);
        double s = (lambda1 - 1.0) * (lambda1 - 1.0);
        return lambda1 * lambda1 * c1 / s - c1 * c1;
    }
    static constexpr double gap_p0_paper = 0.682906;
    static constexpr double gap_p1_paper = 0.184653;
    static constexpr double gap_C_paper = 0.056625;
};

}  // namespace zlrr
