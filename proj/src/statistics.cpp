#include "zlrr/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "zlrr/error.hpp"

namespace zlrr {

namespace {

void add_shifted(std::map<std::size_t, Int>& into, const std::map<std::size_t, Int>& from,
                 std::size_t shift) {
    for (const auto& [k, c] : from) into[k + shift] += c;
}

/// Distribution of greedy summand counts over [0, x) with summand indices
/// restricted to 0..cap (cap = -1 means no indices available). Splits on the
/// largest term below x, mirroring one greedy step.
class IntervalSplitter {
  public:
    explicit IntervalSplitter(const SequenceTable& table) : table_(table) {}

    const std::map<std::size_t, Int>& distribution(const Int& x, long cap) {
        auto key = std::make_pair(x, cap);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        std::map<std::size_t, Int> dist;
        if (x >= 1) dist[0] = 1;
        if (x > 1) {
            long i = -1;
            for (long j = 0; j <= cap; ++j)
                if (table_.terms[static_cast<std::size_t>(j)] < x &&
                    (i < 0 || table_.terms[static_cast<std::size_t>(j)] >=
                                  table_.terms[static_cast<std::size_t>(i)]))
                    i = j;
            if (i < 0)
                fail(ErrorCode::TableTooSmall,
                     "no term below " + to_decimal(x) + " among allowed indices");
            const Int& zi = table_.terms[static_cast<std::size_t>(i)];
            dist.clear();
            const auto& left = distribution(zi, cap);
            dist = left;
            const auto right = distribution(x - zi, i - 1);
            add_shifted(dist, right, 1);
        }
        return memo_.emplace(std::move(key), std::move(dist)).first->second;
    }

  private:
    const SequenceTable& table_;
    std::map<std::pair<Int, long>, std::map<std::size_t, Int>> memo_;
};

}  // namespace

SummandDistribution exact_summand_distribution(const SequenceTable& table, std::size_t N,
                                               DistributionPath path) {
    if (N > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N");
    const Int& zn = table.terms[N];
    SummandDistribution dist;
    dist.N = N;
    if (path == DistributionPath::Enumeration) {
        if (zn > kEnumerationBudget)
            fail(ErrorCode::BudgetExceeded, "interval [0, Z_N) has " + to_decimal(zn) +
                                                " integers, budget is " +
                                                std::to_string(kEnumerationBudget));
        for (Int m = 0; m < zn; ++m) ++dist.counts[summand_count(greedy_decompose(table, m))];
    } else {
        IntervalSplitter splitter(table);
        dist.counts = splitter.distribution(zn, static_cast<long>(table.max_index()));
    }
    for (const auto& [k, c] : dist.counts) dist.total += c;
    return dist;
}

SummandDistribution gf_recurrence_distribution(const SequenceTable& table, std::size_t N) {
    const ZlrrSpec& spec = table.spec;
    const std::vector<unsigned long> wanted{0, 1, 1};
    if (spec.coefficients != wanted || spec.initial_terms != std::vector<Int>{1, 2, 3})
        fail(ErrorCode::WrongSpecShape,
             "coefficient recurrence is defined for the default sequence only");

    std::vector<std::map<std::size_t, Int>> g(std::max<std::size_t>(N, 2) + 1);
    g[0] = {{0, 1}};
    g[1] = {{0, 1}, {1, 1}};
    g[2] = {{0, 1}, {1, 2}};
    for (std::size_t n = 3; n <= N; ++n) {
        g[n] = g[n - 1];
        add_shifted(g[n], g[n - 2], 1);
        add_shifted(g[n], g[n - 3], 1);
    }
    SummandDistribution dist;
    dist.N = N;
    dist.counts = g[N];
    for (const auto& [k, c] : dist.counts) dist.total += c;
    return dist;
}

MomentSummary moments(const SummandDistribution& dist) {
    if (dist.total == 0) fail(ErrorCode::EmptyDistribution, "distribution has no mass");
    Int s1 = 0, s2 = 0;
    for (const auto& [k, c] : dist.counts) {
        s1 += Int(static_cast<unsigned long>(k)) * c;
        s2 += Int(static_cast<unsigned long>(k)) * static_cast<unsigned long>(k) * c;
    }
    MomentSummary m;
    m.n_label = dist.N;
    m.mean = Rat(s1, dist.total);
    m.mean.canonicalize();
    Rat ex2(s2, dist.total);
    ex2.canonicalize();
    m.variance = ex2 - m.mean * m.mean;
    m.variance.canonicalize();
    return m;
}

double ks_vs_gaussian(const SummandDistribution& dist) {
    MomentSummary m = moments(dist);
    if (m.variance == 0) fail(ErrorCode::DegenerateDistribution, "variance is zero");
    double mu = to_double(m.mean);
    double sigma = std::sqrt(to_double(m.variance));
    double total = dist.total.get_d();
    double ks = 0.0, acc = 0.0;
    for (const auto& [k, c] : dist.counts) {
        double z = (static_cast<double>(k) - mu) / sigma;
        double phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
        double before = acc / total;
        acc += c.get_d();
        double after = acc / total;
        ks = std::max({ks, std::fabs(phi - before), std::fabs(phi - after)});
    }
    return ks;
}

namespace {

double regression_slope(const std::vector<std::pair<double, double>>& pts) {
    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    double mx = sx / n, my = sy / n;
    double num = 0, den = 0;
    for (const auto& [x, y] : pts) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    return num / den;
}

}  // namespace

SlopeFit slope_fit(const std::vector<std::pair<std::size_t, MomentSummary>>& series) {
    if (series.size() < 3) fail(ErrorCode::TooFewPoints, "need at least 3 points for a slope");
    std::vector<std::pair<double, double>> mean_pts, var_pts;
    for (const auto& [n, m] : series) {
        mean_pts.emplace_back(static_cast<double>(n), to_double(m.mean));
        var_pts.emplace_back(static_cast<double>(n), to_double(m.variance));
    }
    SlopeFit fit;
    fit.mean_slope = regression_slope(mean_pts);
    fit.var_slope = regression_slope(var_pts);
    return fit;
}

GapHistogram exact_gap_distribution(const SequenceTable& table, std::size_t N) {
    if (N + 1 > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N+1");
    const Int &lo = table.terms[N], &hi = table.terms[N + 1];
    if (hi <= lo) fail(ErrorCode::EmptyInterval, "Z_{N+1} equals Z_N");
    if (hi - lo > kEnumerationBudget)
        fail(ErrorCode::BudgetExceeded, "interval too wide for exhaustive gap pooling");
    GapHistogram hist;
    hist.N = N;
    for (Int m = lo; m < hi; ++m) {
        GapList g = gap_list(greedy_decompose(table, m));
        for (std::size_t gap : g.gaps) {
            ++hist.counts[gap];
            ++hist.total_gaps;
        }
    }
    return hist;
}

GeometricFit fit_geometric_decay(const GapHistogram& hist, std::size_t k_min, std::size_t k_max) {
    std::vector<std::pair<double, double>> pts;
    double total = hist.total_gaps.get_d();
    for (std::size_t k = k_min; k <= k_max; ++k) {
        auto it = hist.counts.find(k);
        if (it == hist.counts.end() || it->second == 0) continue;
        pts.emplace_back(static_cast<double>(k), std::log(it->second.get_d() / total));
    }
    if (pts.size() < 3)
        fail(ErrorCode::TooFewBins, "need at least 3 nonzero bins in [" + std::to_string(k_min) +
                                        ", " + std::to_string(k_max) + "]");
    double slope = regression_slope(pts);
    double my = 0, mx = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double intercept = my - slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : pts) {
        double fitted = intercept + slope * x;
        ss_res += (y - fitted) * (y - fitted);
        ss_tot += (y - my) * (y - my);
    }
    GeometricFit fit;
    fit.rate = -slope;
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    fit.prefactor = std::exp(intercept);
    fit.bins_used = pts.size();
    return fit;
}

}  // namespace zlrr
