// Acceptance suite: one line per check, PASS or FAIL with the measured
// numbers, process exit code = number of failing checks.
//
// Two checks (8 and 12) encode published claims that the exact computation
// contradicts. They are implemented exactly as stated and fail honestly;
// the surrounding lines carry the measured values so the disagreement is
// visible rather than papered over.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "zlrr/ensemble.hpp"
#include "zlrr/enumeration.hpp"
#include "zlrr/greedy.hpp"
#include "zlrr/recurrence.hpp"
#include "zlrr/report.hpp"
#include "zlrr/rng.hpp"
#include "zlrr/statistics.hpp"

using namespace zlrr;

namespace {

int g_failures = 0;

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

void line(int id, bool pass, const char* name, const std::string& detail, double seconds) {
    std::printf("[%2d] %s  %-24s %s (%.2fs)\n", id, pass ? "PASS" : "FAIL", name,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct Context {
    SequenceTable table;
    RootInfo info;
    ForbiddenPattern pattern;
};

void check_sequence_exactness(const Context& ctx) {
    Timer t;
    SequenceTable s = generate_sequence(ctx.table.spec, 12);
    const long expected[] = {1, 2, 3, 3, 5, 6, 8, 11, 14, 19, 25, 33, 44};
    bool ok = s.terms.size() == 13;
    for (std::size_t n = 0; ok && n < 13; ++n) ok = s.terms[n] == expected[n];
    line(1, ok, "sequence exactness",
         ok ? "terms 0..12 equal the reference list" : "terms diverge from the reference list",
         t.seconds());
}

void check_root_constants(const Context& ctx) {
    Timer t;
    double dl = std::fabs(ctx.info.lambda1 - 1.324718);
    double da = std::fabs(ctx.info.binet_a - 0.234487);
    bool ok = dl <= 1e-5 && da <= 1e-5;
    line(2, ok, "root constants",
         fmt("lambda1 = %.10f (|diff| = %.2e), a = %.10f (|diff| = %.2e)", ctx.info.lambda1, dl,
             ctx.info.binet_a, da),
         t.seconds());
}

void check_greedy_soundness(const Context& ctx) {
    Timer t;
    const long limit = 1000000;
    long bad = 0;
    for (long m = 0; m <= limit; ++m) {
        Decomposition d = greedy_decompose(ctx.table, m);
        Int sum = 0;
        bool decreasing = true;
        for (std::size_t j = 0; j < d.indices.size(); ++j) {
            if (j > 0 && d.indices[j] >= d.indices[j - 1]) decreasing = false;
            sum += ctx.table.terms[d.indices[j]];
        }
        if (!decreasing || sum != m) ++bad;
    }
    line(3, bad == 0, "greedy soundness",
         fmt("%ld integers reconstructed with strictly decreasing indices, %ld violations",
             limit + 1, bad),
         t.seconds());
}

void check_distribution_oracle(const Context& ctx) {
    Timer t;
    std::size_t mismatches = 0;
    for (std::size_t N = 0; N <= 30; ++N) {
        SummandDistribution fast = exact_summand_distribution(ctx.table, N, DistributionPath::IntervalDp);
        SummandDistribution slow = exact_summand_distribution(ctx.table, N, DistributionPath::Enumeration);
        if (fast.counts != slow.counts || fast.total != slow.total) ++mismatches;
    }
    line(4, mismatches == 0, "distribution oracle",
         fmt("interval splitting vs per-integer enumeration, N <= 30: %zu mismatches", mismatches),
         t.seconds());
}

void check_mass_conservation(const Context& ctx) {
    Timer t;
    std::size_t bad = 0;
    for (std::size_t N = 0; N <= 40; ++N) {
        SummandDistribution d = exact_summand_distribution(ctx.table, N);
        Int sum = 0;
        for (const auto& [k, c] : d.counts) sum += c;
        if (sum != ctx.table.terms[N] || d.total != sum) ++bad;
    }
    line(5, bad == 0, "mass conservation",
         fmt("sum of counts equals Z_N for N <= 40: %zu violations", bad), t.seconds());
}

void check_clt_trend(const Context& ctx) {
    Timer t;
    double ks10 = ks_vs_gaussian(exact_summand_distribution(ctx.table, 10));
    double ks40 = ks_vs_gaussian(exact_summand_distribution(ctx.table, 40));
    bool ok = ks40 < 0.2 && ks40 < ks10;
    line(6, ok, "summand normality trend", fmt("KS(10) = %.6f, KS(40) = %.6f", ks10, ks40),
         t.seconds());
}

void check_moment_linearity(const Context& ctx) {
    Timer t;
    std::vector<std::pair<std::size_t, MomentSummary>> wide, narrow;
    for (std::size_t N = 20; N <= 40; ++N) {
        MomentSummary m = moments(exact_summand_distribution(ctx.table, N));
        wide.push_back({N, m});
        if (N >= 25) narrow.push_back({N, m});
    }
    double s1 = slope_fit(wide).mean_slope;
    double s2 = slope_fit(narrow).mean_slope;
    bool ok = std::fabs(s1 - s2) < 0.01;
    // Both published candidates for the mean-growth constant are reported;
    // neither is asserted.
    double c1a = ReportConstants::c1_paper;
    double c1b = ReportConstants::c1_formula(ctx.info.lambda1);
    line(7, ok, "moment linearity",
         fmt("slope[20,40] = %.6f, slope[25,40] = %.6f; vs %.6f diff %.4f, vs %.6f diff %.4f", s1,
             s2, c1a, std::fabs(s1 - c1a), c1b, std::fabs(s1 - c1b)),
         t.seconds());
}

void check_gap_decay(const Context& ctx) {
    Timer t;
    GapHistogram hist = exact_gap_distribution(ctx.table, 35);
    GeometricFit fit = fit_geometric_decay(hist, 2, 8);
    // Hard gate: the claimed log-linear decay over bins 2..8. The measured
    // histogram has a terminal-only bin at 3 and an empty bin at 4, so the
    // fit is nowhere near a straight line; the check states the claim and
    // fails on the measurement.
    bool ok = fit.r_squared > 0.98;
    double soft_target = 0.28124;
    line(8, ok, "gap decay fit",
         fmt("R^2 = %.6f (gate > 0.98), rate = %.6f (soft: positive, within 0.1 of %.5f)",
             fit.r_squared, fit.rate, soft_target),
         t.seconds());
}

void check_legal_string_oracle(const Context& ctx) {
    Timer t;
    std::size_t mismatches = 0;
    for (std::size_t L = 0; L <= 20; ++L) {
        Int brute = 0;
        for (std::uint64_t mask = 0; mask < (1ull << L); ++mask) {
            CoefficientString s;
            s.bits.resize(L);
            for (std::size_t i = 0; i < L; ++i) s.bits[i] = (mask >> i) & 1 ? 1 : 0;
            if (is_legal(s, ctx.pattern)) ++brute;
        }
        if (count_legal_strings(L, ctx.pattern) != brute) ++mismatches;
    }
    bool pins = count_legal_strings(4, ctx.pattern) == 15 && count_legal_strings(5, ctx.pattern) == 28;
    line(9, mismatches == 0 && pins, "legal-string oracle",
         fmt("window recursion vs brute force, L <= 20: %zu mismatches; a(4) = %s, a(5) = %s",
             mismatches, count_legal_strings(4, ctx.pattern).get_str().c_str(),
             count_legal_strings(5, ctx.pattern).get_str().c_str()),
         t.seconds());
}

void check_transfer_matrix_algebra(const Context& ctx) {
    Timer t;
    TransferMatrix identity;
    identity.n = 3;
    identity.entries = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    bool id_ok = char_poly_exact(identity) == IntPolynomial{{-1, 3, -3, 1}};

    TransferMatrix companion;
    companion.n = 3;
    companion.entries = {{0, 1, 1}, {1, 0, 0}, {0, 1, 0}};
    bool comp_ok = char_poly_exact(companion) == IntPolynomial{{-1, -1, 0, 1}};

    TransferMatrix printed = paper_matrix();
    bool rows_ok = true;
    for (const Int& s : printed.row_sums()) rows_ok = rows_ok && s == 2;

    double perron = perron_eigenvalue(printed);
    bool perron_ok = std::fabs(perron - 2.0) <= 1e-9;

    IntPolynomial computed = char_poly_exact(printed);
    IntPolynomial published{{0, 0, 0, 0, 2, 1, -1, -2, 1}};
    bool same = computed == published;

    bool ok = id_ok && comp_ok && rows_ok && perron_ok;
    line(10, ok, "transfer-matrix algebra",
         fmt("identity %s, companion %s, T*1 = 2*1 %s, perron = %.12f; charpoly vs published "
             "x^8 - 2x^7 - x^6 + x^5 + 2x^4: %s",
             id_ok ? "ok" : "BAD", comp_ok ? "ok" : "BAD", rows_ok ? "ok" : "BAD", perron,
             same ? "identical" : "DIFFERENT"),
         t.seconds());
}

void check_count_oracle(const Context& ctx) {
    Timer t;
    const std::size_t cap = 20;
    unsigned long terms[cap + 1];
    unsigned long max_sum = 0;
    for (std::size_t i = 0; i <= cap; ++i) {
        terms[i] = ctx.table.terms[i].get_ui();
        max_sum += terms[i];
    }
    std::vector<unsigned long> hist(max_sum + 1, 0);
    for (std::uint64_t mask = 0; mask < (1ull << (cap + 1)); ++mask) {
        CoefficientString s;
        s.bits.resize(cap + 1);
        unsigned long value = 0;
        for (std::size_t i = 0; i <= cap; ++i) {
            int b = (mask >> i) & 1 ? 1 : 0;
            s.bits[i] = b;
            if (b) value += terms[i];
        }
        if (is_legal(s, ctx.pattern)) ++hist[value];
    }

    RandomStream rng(11);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        unsigned long target = rng.uniform_below_u64(max_sum + 1);
        Int counted = count_decompositions(ctx.table, Int(static_cast<long>(target)), ctx.pattern, cap);
        if (counted != Int(static_cast<long>(hist[target]))) ++mismatches;
    }
    Int d0 = count_decompositions(ctx.table, 0, ctx.pattern, cap);
    Int d4 = count_decompositions(ctx.table, 4, ctx.pattern, cap);
    bool ok = mismatches == 0 && d0 == 1 && d4 == 2;
    line(11, ok, "d(N) oracle",
         fmt("branch-and-bound vs subset enumeration, cap 20, 100 seeded targets: %zu mismatches; "
             "d(0) = %s, d(4) = %s",
             mismatches, d0.get_str().c_str(), d4.get_str().c_str()),
         t.seconds());
}

void check_ensemble_equivalence(const Context& ctx) {
    Timer t;
    LocalStatistic gap2 = gap_at_least2_statistic(8);
    SampleBudget budget;
    budget.n_samples = 1000000;
    budget.seed = 1;
    EnsembleEstimate micro =
        expectation_local(ctx.table, ctx.info, gap2, {EnsembleEstimate::Tag::Micro, 25, 1}, budget);
    EnsembleEstimate canon = expectation_local(ctx.table, ctx.info, gap2,
                                               {EnsembleEstimate::Tag::Canonical, 25, 1}, budget);
    double diff = std::fabs(micro.value - canon.value);
    double combined = std::sqrt(micro.std_error * micro.std_error + canon.std_error * canon.std_error);
    // The claimed equivalence of the two ensembles on this statistic. The
    // windows below the leading index never satisfy the predicate under the
    // uniform measure, while the stationary one fires half the time, so the
    // gap is enormous; the check fails on the measurement.
    bool ok = diff <= 3.0 * combined;
    line(12, ok, "ensemble equivalence",
         fmt("micro (exact) = %.6f, canonical = %.6f +- %.6f at 10^6 samples, diff = %.1f SE",
             micro.value, canon.value, canon.std_error, combined > 0 ? diff / combined : 0.0),
         t.seconds());
}

void check_concentration_trend(const Context& ctx) {
    Timer t;
    ConcentrationReport r20 = concentration_experiment(ctx.table, 20, 200, 1, ctx.pattern);
    ConcentrationReport r30 = concentration_experiment(ctx.table, 30, 200, 1, ctx.pattern);
    bool ok = r30.sd < r20.sd;
    line(13, ok, "concentration trend",
         fmt("sd(L=20) = %.6f, sd(L=30) = %.6f; means %.6f / %.6f vs log(2/lambda1) = %.5f",
             r20.sd, r30.sd, r20.mean, r30.mean, r20.ref_log_2_over_lambda1),
         t.seconds());
}

void check_report_completeness(const Context& ctx) {
    Timer t;
    ReportOptions options;
    DiscrepancyReport report = build_discrepancy_report(ctx.table, ctx.info, options);
    const char* required[] = {"c1_value", "c1_formula", "c2_value", "gap_p0",
                              "gap_p1",   "gap_C",      "alpha",    "concentration_K"};
    std::size_t missing = 0, malformed = 0;
    for (const char* name : required) {
        const ReportEntry* e = report.find(name);
        if (!e) {
            ++missing;
            continue;
        }
        bool has_counterpart = e->computed_value.has_value() || e->verdict == Verdict::Incomparable;
        if (e->paper_ref.empty() || !has_counterpart) ++malformed;
    }
    bool ok = missing == 0 && malformed == 0;
    line(14, ok, "report completeness",
         fmt("%zu entries total; all 8 required quantities present with citation and computed "
             "counterpart (%zu missing, %zu malformed)",
             report.entries.size(), missing, malformed),
         t.seconds());
}

void check_determinism(const Context& ctx) {
    Timer t;
    ReportOptions options;
    options.ensemble_samples = 20000;
    options.concentration_samples = 40;

    setenv("ZLRR_WORKERS", "1", 1);
    std::string one = report_to_json(build_discrepancy_report(ctx.table, ctx.info, options));
    setenv("ZLRR_WORKERS", "4", 1);
    std::string four = report_to_json(build_discrepancy_report(ctx.table, ctx.info, options));
    unsetenv("ZLRR_WORKERS");
    std::string again = report_to_json(build_discrepancy_report(ctx.table, ctx.info, options));

    bool ok = one == four && four == again;
    line(15, ok, "determinism",
         fmt("report built three times (1 worker, 4 workers, default): %s, %zu bytes",
             ok ? "byte-identical" : "outputs differ", one.size()),
         t.seconds());
}

}  // namespace

int main() {
    Timer total;
    Context ctx;
    ctx.table = generate_sequence(ZlrrSpec{{0, 1, 1}, {1, 2, 3}}, 60);
    ctx.info = dominant_root(characteristic_polynomial(ctx.table.spec));

    std::printf("acceptance suite: exact sequence library and published-constant cross-checks\n");

    check_sequence_exactness(ctx);
    check_root_constants(ctx);
    check_greedy_soundness(ctx);
    check_distribution_oracle(ctx);
    check_mass_conservation(ctx);
    check_clt_trend(ctx);
    check_moment_linearity(ctx);
    check_gap_decay(ctx);
    check_legal_string_oracle(ctx);
    check_transfer_matrix_algebra(ctx);
    check_count_oracle(ctx);
    check_ensemble_equivalence(ctx);
    check_concentration_trend(ctx);
    check_report_completeness(ctx);
    check_determinism(ctx);

    std::printf("%d of 15 checks passed (%.1fs total)\n", 15 - g_failures, total.seconds());
    if (g_failures)
        std::printf("failing checks state published claims the exact computation contradicts; "
                    "see the lines above for the measured values\n");
    return g_failures;
}
