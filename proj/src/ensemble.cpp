#include "zlrr/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "zlrr/error.hpp"
#include "zlrr/parallel.hpp"
#include "zlrr/rng.hpp"

namespace zlrr {

LocalStatistic gap_at_least2_statistic(std::size_t window_length) {
    LocalStatistic f;
    f.window_length = window_length;
    f.name = "gap2";
    f.evaluator = [window_length](std::uint64_t w) {
        int prev = -1;
        for (std::size_t t = 0; t < window_length; ++t) {
            if (!(w >> t & 1)) continue;
            if (prev >= 0 && static_cast<int>(t) - prev >= 2) return 1.0;
            prev = static_cast<int>(t);
        }
        return 0.0;
    };
    return f;
}

LocalStatistic present_at_offset0_statistic(std::size_t window_length) {
    LocalStatistic f;
    f.window_length = window_length;
    f.name = "present0";
    f.evaluator = [](std::uint64_t w) { return static_cast<double>(w & 1); };
    return f;
}

LocalStatistic constant_one_statistic(std::size_t window_length) {
    LocalStatistic f;
    f.window_length = window_length;
    f.name = "one";
    f.evaluator = [](std::uint64_t) { return 1.0; };
    return f;
}

std::vector<Int> sample_microcanonical(const SequenceTable& table, std::size_t N,
                                       std::uint64_t seed, std::size_t n) {
    if (N + 1 > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N+1");
    const Int &lo = table.terms[N], &hi = table.terms[N + 1];
    Int width = hi - lo;
    if (width <= 0) fail(ErrorCode::EmptyInterval, "Z_{N+1} equals Z_N");
    RandomStream rng(seed);
    std::vector<Int> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + rng.uniform_below(width));
    return out;
}

std::vector<std::size_t> sample_canonical(const RootInfo& info, std::size_t horizon,
                                          RandomStream& rng) {
    std::vector<std::size_t> pattern;
    double log_q = -std::log(info.lambda1);
    std::size_t i = horizon;
    while (true) {
        pattern.push_back(i);
        double u = rng.uniform53();
        double g = 1.0 + std::floor(std::log1p(-u) / log_q);
        if (g > static_cast<double>(i)) break;
        i -= static_cast<std::size_t>(g);
    }
    return pattern;
}

std::vector<std::size_t> sample_canonical(const RootInfo& info, std::size_t horizon,
                                          std::uint64_t seed) {
    RandomStream rng(seed);
    return sample_canonical(info, horizon, rng);
}

namespace {

struct ShardAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;
};

/// Splits n samples over the fixed shard count, runs eval per sample with a
/// per-shard stream, and merges moments in shard order.
EnsembleEstimate sampled_estimate(
    std::uint64_t n, std::uint64_t seed, EnsembleEstimate::Tag tag,
    const std::function<double(RandomStream&)>& eval) {
    std::vector<ShardAccumulator> shards(kSampleShards);
    run_sharded(kSampleShards, worker_count(), [&](unsigned s) {
        RandomStream rng(seed, s);
        std::uint64_t count = n / kSampleShards + (s < n % kSampleShards ? 1 : 0);
        ShardAccumulator& acc = shards[s];
        for (std::uint64_t i = 0; i < count; ++i) {
            double x = eval(rng);
            acc.sum += x;
            acc.sum_sq += x * x;
            acc.n += 1;
        }
    });
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t total = 0;
    for (const ShardAccumulator& acc : shards) {
        sum += acc.sum;
        sum_sq += acc.sum_sq;
        total += acc.n;
    }
    EnsembleEstimate est;
    est.tag = tag;
    est.exact = false;
    est.n_samples = total;
    est.value = sum / static_cast<double>(total);
    double var = sum_sq / static_cast<double>(total) - est.value * est.value;
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(total));
    return est;
}

bool begins_with(const Decomposition& d, const PrefixPattern& p) {
    if (d.indices.size() < p.indices.size()) return false;
    return std::equal(p.indices.begin(), p.indices.end(), d.indices.begin());
}

}  // namespace

EnsembleEstimate prefix_frequency(const SequenceTable& table, std::size_t N,
                                  const PrefixPattern& p, EstimateMode mode,
                                  const SampleBudget& budget) {
    if (p.indices.empty())
        fail(ErrorCode::WrongSpecShape, "prefix pattern must not be empty");
    for (std::size_t j = 0; j < p.indices.size(); ++j) {
        if (p.indices[j] > N) fail(ErrorCode::WrongSpecShape, "prefix index exceeds N");
        if (j > 0 && p.indices[j] >= p.indices[j - 1])
            fail(ErrorCode::WrongSpecShape, "prefix indices must strictly decrease");
    }
    if (N + 1 > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N+1");
    const Int &lo = table.terms[N], &hi = table.terms[N + 1];
    Int width = hi - lo;
    if (width <= 0) fail(ErrorCode::EmptyInterval, "Z_{N+1} equals Z_N");

    if (mode == EstimateMode::Exact) {
        if (width > budget.max_exact_scan)
            fail(ErrorCode::BudgetExceeded, "interval too wide for an exhaustive scan");
        Int hits = 0;
        for (Int m = lo; m < hi; ++m)
            if (begins_with(greedy_decompose(table, m), p)) ++hits;
        EnsembleEstimate est;
        est.tag = EnsembleEstimate::Tag::Micro;
        est.exact = true;
        est.n_samples = to_u64(width);
        Rat frac(hits, width);
        frac.canonicalize();
        est.value = frac.get_d();
        est.std_error = 0.0;
        return est;
    }
    return sampled_estimate(budget.n_samples, budget.seed, EnsembleEstimate::Tag::Micro,
                            [&](RandomStream& rng) {
                                Int m = lo + rng.uniform_below(width);
                                return begins_with(greedy_decompose(table, m), p) ? 1.0 : 0.0;
                            });
}

namespace {

std::uint64_t window_mask_from_indices(const std::vector<std::size_t>& indices,
                                       std::size_t win_lo, std::size_t W) {
    std::uint64_t mask = 0;
    for (std::size_t idx : indices)
        if (idx >= win_lo && idx < win_lo + W) mask |= 1ull << (idx - win_lo);
    return mask;
}

}  // namespace

EnsembleEstimate expectation_local(const SequenceTable& table, const RootInfo& info,
                                   const LocalStatistic& F, const EnsembleSpec& ensemble,
                                   const SampleBudget& budget) {
    const std::size_t W = F.window_length;
    if (W == 0 || W > 64) fail(ErrorCode::WrongSpecShape, "window length must be in 1..64");
    if (ensemble.top_index < ensemble.window_offset + W - 1)
        fail(ErrorCode::WrongSpecShape, "window does not fit below the top index");
    const std::size_t win_lo = ensemble.top_index - ensemble.window_offset - W + 1;

    if (ensemble.tag == EnsembleEstimate::Tag::Canonical) {
        return sampled_estimate(budget.n_samples, budget.seed, EnsembleEstimate::Tag::Canonical,
                                [&](RandomStream& rng) {
                                    auto pattern = sample_canonical(info, ensemble.top_index, rng);
                                    return F.evaluator(window_mask_from_indices(pattern, win_lo, W));
                                });
    }

    const std::size_t N = ensemble.top_index;
    if (N + 1 > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N+1");
    const Int &lo = table.terms[N], &hi = table.terms[N + 1];
    Int width = hi - lo;
    if (width <= 0) fail(ErrorCode::EmptyInterval, "Z_{N+1} equals Z_N");

    if (width <= budget.max_exact_scan) {
        double sum = 0.0;
        std::uint64_t count = 0;
        for (Int m = lo; m < hi; ++m) {
            Decomposition d = greedy_decompose(table, m);
            sum += F.evaluator(window_mask_from_indices(d.indices, win_lo, W));
            ++count;
        }
        EnsembleEstimate est;
        est.tag = EnsembleEstimate::Tag::Micro;
        est.exact = true;
        est.n_samples = count;
        est.value = sum / static_cast<double>(count);
        est.std_error = 0.0;
        return est;
    }
    return sampled_estimate(budget.n_samples, budget.seed, EnsembleEstimate::Tag::Micro,
                            [&](RandomStream& rng) {
                                Int m = lo + rng.uniform_below(width);
                                Decomposition d = greedy_decompose(table, m);
                                return F.evaluator(window_mask_from_indices(d.indices, win_lo, W));
                            });
}

ConcentrationReport concentration_experiment(const SequenceTable& table, std::size_t L,
                                             std::size_t n_samples, std::uint64_t seed,
                                             const ForbiddenPattern& p) {
    ConcentrationReport report;
    report.L = L;
    if (n_samples == 0) return report;

    const std::size_t cap = L + 3;
    if (cap > kIndexCapLimit)
        fail(ErrorCode::BudgetExceeded, "length pushes the index cap past the search budget");
    if (cap > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through L+3");
    const Int &lo = table.terms[L], &hi = table.terms[L + 1];
    Int width = hi - lo;
    if (width <= 0) fail(ErrorCode::EmptyInterval, "Z_{L+1} equals Z_L");

    std::vector<Int> targets;
    targets.reserve(n_samples);
    RandomStream rng(seed);
    for (std::size_t i = 0; i < n_samples; ++i) targets.push_back(lo + rng.uniform_below(width));

    std::vector<Int> counts(n_samples);
    run_sharded(kSampleShards, worker_count(), [&](unsigned s) {
        for (std::size_t i = s; i < n_samples; i += kSampleShards)
            counts[i] = count_decompositions(table, targets[i], p, cap);
    });

    double sum = 0.0, sum_sq = 0.0;
    std::size_t used = 0;
    report.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        ConcentrationSample sample;
        sample.sample_index = i;
        sample.N = targets[i];
        sample.d = counts[i];
        if (counts[i] == 0) {
            ++report.zero_count_findings;
            sample.log_d_over_L = 0.0;
        } else {
            sample.log_d_over_L = log_int(counts[i]) / static_cast<double>(L);
            sum += sample.log_d_over_L;
            sum_sq += sample.log_d_over_L * sample.log_d_over_L;
            ++used;
        }
        report.samples.push_back(sample);
    }
    if (used > 0) {
        report.mean = sum / static_cast<double>(used);
        if (used > 1) {
            double var = (sum_sq - sum * sum / static_cast<double>(used)) /
                         static_cast<double>(used - 1);
            report.sd = std::sqrt(std::max(var, 0.0));
        }
    }

    RootInfo info = dominant_root(characteristic_polynomial(table.spec));
    Int g40 = count_legal_strings(40, p), g41 = count_legal_strings(41, p);
    report.measured_growth_ratio = g41.get_d() / g40.get_d();
    report.ref_log_2_over_lambda1 = std::log(2.0) - std::log(info.lambda1);
    report.ref_log_growth_over_lambda1 =
        std::log(report.measured_growth_ratio) - std::log(info.lambda1);
    return report;
}

}  // namespace zlrr
