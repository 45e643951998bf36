#include "zlrr/report.hpp"

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "zlrr/ensemble.hpp"
#include "zlrr/enumeration.hpp"
#include "zlrr/error.hpp"
#include "zlrr/format.hpp"
#include "zlrr/statistics.hpp"

namespace zlrr {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Match: return "match";
        case Verdict::Mismatch: return "mismatch";
        case Verdict::Incomparable: return "incomparable";
    }
    return "incomparable";
}

namespace {

std::string fmt_g(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

ReportEntry make_entry(std::string name, std::string ref, std::optional<double> paper,
                       std::optional<double> computed, std::string method, double tolerance,
                       std::string note) {
    ReportEntry e;
    e.quantity_name = std::move(name);
    e.paper_ref = std::move(ref);
    e.paper_value = paper;
    e.computed_value = computed;
    e.method = std::move(method);
    e.tolerance = tolerance;
    e.note = std::move(note);
    if (paper && computed) {
        e.abs_diff = std::fabs(*paper - *computed);
        e.verdict = *e.abs_diff <= tolerance ? Verdict::Match : Verdict::Mismatch;
    } else {
        e.verdict = Verdict::Incomparable;
    }
    return e;
}

double probability_at(const GapHistogram& hist, std::size_t k) {
    auto it = hist.counts.find(k);
    if (it == hist.counts.end()) return 0.0;
    Rat p(it->second, hist.total_gaps);
    p.canonicalize();
    return p.get_d();
}

std::size_t coefficient_diff_count(const IntPolynomial& a, const IntPolynomial& b) {
    std::size_t n = std::max(a.coefficients.size(), b.coefficients.size());
    std::size_t diffs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Int ca = i < a.coefficients.size() ? a.coefficients[i] : Int(0);
        Int cb = i < b.coefficients.size() ? b.coefficients[i] : Int(0);
        if (ca != cb) ++diffs;
    }
    return diffs;
}

std::size_t entry_diff_count(const TransferMatrix& a, const TransferMatrix& b) {
    std::size_t diffs = 0;
    for (std::size_t r = 0; r < a.n; ++r)
        for (std::size_t c = 0; c < a.n; ++c)
            if (a.entries[r][c] != b.entries[r][c]) ++diffs;
    return diffs;
}

}  // namespace

const ReportEntry* DiscrepancyReport::find(const std::string& quantity_name) const {
    for (const ReportEntry& e : entries)
        if (e.quantity_name == quantity_name) return &e;
    return nullptr;
}

DiscrepancyReport build_discrepancy_report(const SequenceTable& table, const RootInfo& info,
                                           const ReportOptions& options) {
    std::size_t needed = std::max(options.slope_hi, options.gap_N) + 1;
    needed = std::max({needed, std::size_t{41}, std::size_t{26},
                       options.concentration_length + 3, std::size_t{13}});
    if (table.terms.empty() || table.max_index() < needed)
        fail(ErrorCode::MissingInput,
             "discrepancy report needs sequence terms through index " + std::to_string(needed));

    DiscrepancyReport report;
    auto add = [&report](ReportEntry e) { report.entries.push_back(std::move(e)); };

    add(make_entry("lambda1", "Def. 2.7", 1.324718, info.lambda1,
                   "sign-change bisection plus Newton polishing on the characteristic polynomial",
                   1e-5, "dominance certified by a Graeffe bound on the deflated polynomial"));

    double dp = 3.0 * info.lambda1 * info.lambda1 - 1.0;
    add(make_entry("binet_a_formula", "Def. 2.7", 0.234487, 1.0 / dp,
                   "evaluate 1/(3 lambda1^2 - 1) at the computed root", 1e-5,
                   "the printed closed form evaluates as printed; whether the sequence follows it "
                   "is the next entry"));

    double log_l1 = std::log(info.lambda1);
    double ratio40 = std::exp(log_int(table.terms[40]) - 40.0 * log_l1);
    add(make_entry("binet_limit", "Def. 2.7", 0.234487, ratio40,
                   "Z_40 / lambda1^40 in log space", 1e-3,
                   "the measured ratio sits near " + fmt_g(ratio40) +
                       ", far from a; see binet_residual_40"));

    double res10 = binet_residual(table, info, 10);
    double res20 = binet_residual(table, info, 20);
    double res30 = binet_residual(table, info, 30);
    double res40 = binet_residual(table, info, 40);
    add(make_entry("binet_residual_40", "Def. 2.7", 0.0, res40,
                   "|Z_n/lambda1^n - a| at n = 40", 1e-3,
                   "residuals " + fmt_g(res10, 7) + " (n=10), " + fmt_g(res20, 7) + " (20), " +
                       fmt_g(res30, 7) + " (30), " + fmt_g(res40, 7) +
                       " (40): decreasing, but toward about 1.26724 rather than 0; the sequence "
                       "grows like (a + 1.26724) lambda1^n for these initial terms"));

    Int d22 = count_decompositions(table, Int(22), ForbiddenPattern{}, 12);
    add(make_entry("example_decomposition_22", "Example 2.9", std::nullopt, d22.get_d(),
                   "exhaustive legal-subset search for 22 over indices 0..12", 0.0,
                   "greedy gives 22 = Z_9 + Z_3 (values 19 + 3); the printed labels Z_7 = 19, "
                   "Z_6 = 13, Z_5 = 9 match no generated terms (13 and 9 are not terms), so the "
                   "printed second decomposition 13 + 9 cannot be checked; the search finds " +
                       d22.get_str() + " legal decompositions"));

    try {
        SummandDistribution gf = gf_recurrence_distribution(table, 9);
        add(make_entry("gf_mass_identity", "Thm. 3.6 proof", table.terms[9].get_d(),
                       gf.total.get_d(),
                       "three-term coefficient recurrence for G_N(y) evaluated at y = 1, N = 9",
                       0.0,
                       "G_N(1) should equal Z_N if G_N enumerated [0, Z_N); the recurrence "
                       "already diverges at N = 3 (G_3(1) = 6, Z_3 = 3), so its coefficients "
                       "cannot be the summand counts"));
    } catch (const Error&) {
        add(make_entry("gf_mass_identity", "Thm. 3.6 proof", std::nullopt, std::nullopt,
                       "three-term coefficient recurrence for G_N(y) at y = 1", 0.0,
                       "recurrence shape differs from the printed one; identity not applicable"));
    }

    std::vector<std::pair<std::size_t, MomentSummary>> series;
    for (std::size_t N = options.slope_lo; N <= options.slope_hi; ++N)
        series.emplace_back(N, moments(exact_summand_distribution(table, N)));
    SlopeFit slopes = slope_fit(series);
    std::string slope_range =
        "[" + std::to_string(options.slope_lo) + ", " + std::to_string(options.slope_hi) + "]";

    add(make_entry("c1_value", "Thm. 3.6", ReportConstants::c1_paper, slopes.mean_slope,
                   "least-squares slope of exact E[K_N] over N in " + slope_range, 1e-2,
                   "exact interval-splitting distributions feed the fit"));
    add(make_entry("c1_formula", "Thm. 3.6", ReportConstants::c1_formula(info.lambda1),
                   slopes.mean_slope,
                   "evaluate 1/(lambda1 (3 lambda1^2 - 1)), then compare to the measured slope",
                   1e-2,
                   "the printed value 0.288675 and the printed closed form disagree with each "
                   "other (the form evaluates to " +
                       fmt_g(ReportConstants::c1_formula(info.lambda1)) +
                       "); the measured slope matches neither"));
    add(make_entry("c2_value", "Thm. 3.6", ReportConstants::c2_paper, slopes.var_slope,
                   "least-squares slope of exact Var(K_N) over N in " + slope_range, 1e-2,
                   "the printed closed form lambda1^2 C1/(lambda1 - 1)^2 - C1^2 evaluates to " +
                       fmt_g(ReportConstants::c2_formula(info.lambda1)) +
                       ", matching neither the printed 0.079578 nor the measured slope"));

    GapHistogram gaps = exact_gap_distribution(table, options.gap_N);
    add(make_entry("gap_p0", "Thm. 3.8", ReportConstants::gap_p0_paper, probability_at(gaps, 0),
                   "pooled exact gap histogram over [Z_N, Z_N+1) at N = " +
                       std::to_string(options.gap_N),
                   1e-2,
                   "with g_j = r_{j-1} - r_j over strictly decreasing indices, g = 0 can never "
                   "occur"));
    add(make_entry("gap_p1", "Thm. 3.8", ReportConstants::gap_p1_paper, probability_at(gaps, 1),
                   "pooled exact gap histogram, bin g = 1", 1e-2,
                   "never observed: Z_{i+1} - Z_i = Z_{i-4} forces bulk gaps >= 5 (terminal gap "
                   "3 aside); the printed formula (lambda1 - 1)/lambda1^2 also evaluates to " +
                       fmt_g((info.lambda1 - 1.0) / (info.lambda1 * info.lambda1)) +
                       ", not the printed 0.184653"));

    GeometricFit fit = fit_geometric_decay(gaps, options.gap_k_min, options.gap_k_max);
    std::string bin_range = "[" + std::to_string(options.gap_k_min) + ", " +
                            std::to_string(options.gap_k_max) + "]";
    add(make_entry("gap_C", "Thm. 3.8", ReportConstants::gap_C_paper, fit.prefactor,
                   "exp(intercept) of the log-frequency fit over nonzero bins in " + bin_range,
                   1e-2, "fitted over " + std::to_string(fit.bins_used) + " nonzero bins"));
    add(make_entry("gap_decay_rate", "Thm. 3.8", log_l1, fit.rate,
                   "negated slope of the log-frequency fit over nonzero bins in " + bin_range,
                   0.1,
                   "geometric decay at ratio 1/lambda1 would put the rate near log lambda1 = " +
                       fmt_g(log_l1) + "; the fitted rate is negative (frequencies rise over " +
                       bin_range + "), R^2 = " + fmt_g(fit.r_squared)));

    TransferMatrix printed = paper_matrix();
    TransferMatrix derived = build_transfer_matrix(ForbiddenPattern{});
    double row_diffs = static_cast<double>(entry_diff_count(printed, derived));
    add(make_entry("matrix_row_110", "Thm. 3.10 proof", 0.0, row_diffs,
                   "entrywise diff of the printed matrix against the window-transition matrix",
                   0.0,
                   "the printed row for state 110 is (0,0,0,0,0,1,0,1); appending one bit to "
                   "window 110 reaches only 100 or 101, so column 111 is not a successor, and "
                   "110 -> 100 would complete 1100; the derived row has a single 1 in column "
                   "101"));

    IntPolynomial printed_q;
    printed_q.coefficients = {Int(0), Int(0), Int(0), Int(0), Int(2),
                              Int(1), Int(-1), Int(-2), Int(1)};
    IntPolynomial cp_printed = char_poly_exact(printed);
    IntPolynomial cp_derived = char_poly_exact(derived);
    add(make_entry("charpoly_paper_matrix", "Thm. 3.10 proof", 0.0,
                   static_cast<double>(coefficient_diff_count(cp_printed, printed_q)),
                   "Samuelson-Berkowitz det(xI - T) on the printed matrix, coefficient diff "
                   "against the printed x^4 (x - 2)(x^3 - x - 1)",
                   0.0,
                   "the printed polynomial is internally consistent with the printed matrix"));
    add(make_entry("charpoly_derived_matrix", "Thm. 3.10 proof", 0.0,
                   static_cast<double>(coefficient_diff_count(cp_derived, printed_q)),
                   "Samuelson-Berkowitz det(xI - T) on the derived matrix, coefficient diff "
                   "against the printed polynomial",
                   0.0,
                   "det(xI - T_derived) = x^8 - 2 x^7 + x^4 = x^4 (x - 1)(x^3 - x^2 - x - 1): "
                   "the factor x^3 - x - 1 is absent and the dominant factor is the tribonacci "
                   "polynomial"));

    double perron_printed = perron_eigenvalue(printed);
    double perron_derived = perron_eigenvalue(derived);
    add(make_entry("perron_paper_matrix", "Thm. 3.10 proof", 2.0, perron_printed,
                   "power iteration with Rayleigh-quotient convergence", 1e-9,
                   "every row of the printed matrix sums to 2, so the all-ones vector is an "
                   "exact eigenvector"));
    add(make_entry("perron_derived_matrix", "Thm. 3.10 proof", 2.0, perron_derived,
                   "power iteration with Rayleigh-quotient convergence", 1e-9,
                   "equals the tribonacci constant 1.839287 to solver tolerance; the claimed "
                   "alpha = 2 is produced by the spurious entry in the printed row 110"));

    Int legal24 = count_legal_strings(24, ForbiddenPattern{});
    Int legal25 = count_legal_strings(25, ForbiddenPattern{});
    double alpha_measured = legal25.get_d() / legal24.get_d();
    add(make_entry("alpha", "Thm. 3.10", 2.0, alpha_measured,
                   "ratio of exact legal-string counts at lengths 25 and 24", 1e-3,
                   "the measured growth matches the tribonacci constant; the printed average "
                   "decomposition growth (2/lambda1)^N = 1.509755^N inherits the same error, "
                   "the measured base being " +
                       fmt_g(alpha_measured / info.lambda1)));

    SampleBudget budget;
    budget.seed = options.seed;
    budget.n_samples = options.ensemble_samples;
    LocalStatistic gap2 = gap_at_least2_statistic(8);
    EnsembleSpec micro_spec{EnsembleEstimate::Tag::Micro, 25, 1};
    EnsembleSpec canon_spec{EnsembleEstimate::Tag::Canonical, 25, 1};
    EnsembleEstimate micro = expectation_local(table, info, gap2, micro_spec, budget);
    EnsembleEstimate canon = expectation_local(table, info, gap2, canon_spec, budget);
    double diff = std::fabs(canon.value - micro.value);
    double combined_se = std::sqrt(canon.std_error * canon.std_error +
                                   micro.std_error * micro.std_error);
    add(make_entry("ensemble_gap2_diff", "Thm. 4.8", 0.0, diff,
                   "exact interval scan at N = 25 against canonical sampling (" +
                       std::to_string(options.ensemble_samples) + " draws), statistic: some "
                       "adjacent summand pair at distance >= 2 in an 8-index window one below "
                       "the top",
                   3.0 * combined_se,
                   "micro = " + fmt_g(micro.value) + " exactly, canonical = " +
                       fmt_g(canon.value) + " +/- " + fmt_g(canon.std_error) +
                       "; the canonical ensemble keeps iid geometric decrements that the greedy "
                       "constraint structure excludes"));

    ConcentrationReport conc = concentration_experiment(table, options.concentration_length,
                                                        options.concentration_samples,
                                                        options.seed);
    add(make_entry("concentration_K", "Thm. 4.11", std::log(2.0) - log_l1, conc.mean,
                   "mean of log d(N)/L over " + std::to_string(options.concentration_samples) +
                       " uniform draws from [Z_L, Z_L+1) at L = " +
                       std::to_string(options.concentration_length) +
                       ", d counted over indices 0..L+3",
                   1e-2,
                   "log(alpha/lambda1) with the measured alpha gives " +
                       fmt_g(conc.ref_log_growth_over_lambda1) +
                       ", also above the measured mean at this length; the mean drifts upward "
                       "with L, sd " +
                       fmt_g(conc.sd)));

    for (const ReportEntry& e : report.entries) {
        switch (e.verdict) {
            case Verdict::Match: ++report.match_count; break;
            case Verdict::Mismatch: ++report.mismatch_count; break;
            case Verdict::Incomparable: ++report.incomparable_count; break;
        }
    }
    return report;
}

std::string report_to_json(const DiscrepancyReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("entries");
    w.begin_array();
    for (const ReportEntry& e : report.entries) {
        w.begin_object();
        w.key("quantity");
        w.string_value(e.quantity_name);
        w.key("quantity_name");
        w.string_value(e.quantity_name);
        w.key("paper_ref");
        w.string_value(e.paper_ref);
        w.key("paper_value");
        if (e.paper_value) w.float_value(*e.paper_value); else w.null_value();
        w.key("computed_value");
        if (e.computed_value) w.float_value(*e.computed_value); else w.null_value();
        w.key("method");
        w.string_value(e.method);
        w.key("abs_diff");
        if (e.abs_diff) w.float_value(*e.abs_diff); else w.null_value();
        w.key("tolerance");
        w.float_value(e.tolerance);
        w.key("verdict");
        w.string_value(verdict_name(e.verdict));
        w.key("note");
        w.string_value(e.note);
        w.end_object();
    }
    w.end_array();
    w.key("match_count");
    w.uint_value(report.match_count);
    w.key("mismatch_count");
    w.uint_value(report.mismatch_count);
    w.key("incomparable_count");
    w.uint_value(report.incomparable_count);
    w.end_object();
    return w.take();
}

std::string report_to_text(const DiscrepancyReport& report) {
    std::string out;
    for (const ReportEntry& e : report.entries) {
        out += e.quantity_name;
        out += " [";
        out += e.paper_ref;
        out += "] ";
        out += verdict_name(e.verdict);
        out += ": paper=";
        out += e.paper_value ? float17(*e.paper_value) : "n/a";
        out += " computed=";
        out += e.computed_value ? float17(*e.computed_value) : "n/a";
        if (e.abs_diff) {
            out += " |diff|=";
            out += float17(*e.abs_diff);
        }
        out += "\n    ";
        out += e.note;
        out += "\n";
    }
    out += "matches: " + std::to_string(report.match_count);
    out += ", mismatches: " + std::to_string(report.mismatch_count);
    out += ", incomparable: " + std::to_string(report.incomparable_count);
    out += "\n";
    return out;
}

}  // namespace zlrr
