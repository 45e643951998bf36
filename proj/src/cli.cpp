#include "zlrr/cli.hpp"

#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zlrr/config.hpp"
#include "zlrr/ensemble.hpp"
#include "zlrr/enumeration.hpp"
#include "zlrr/error.hpp"
#include "zlrr/format.hpp"
#include "zlrr/greedy.hpp"
#include "zlrr/recurrence.hpp"
#include "zlrr/report.hpp"
#include "zlrr/statistics.hpp"

namespace zlrr {

namespace {

void apply_runtime(const RunConfig& cfg) {
    if (cfg.workers > 0)
        setenv("ZLRR_WORKERS", std::to_string(cfg.workers).c_str(), 1);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) fail(ErrorCode::MissingInput, "cannot open output path " + cfg.out_path);
    f << text;
}

Int parse_big(const std::string& text, const char* what) {
    Int value;
    if (text.empty() || value.set_str(text, 10) != 0)
        fail(ErrorCode::WrongSpecShape, std::string(what) + " is not a decimal integer: " + text);
    return value;
}

/// Grows the table until its largest term exceeds m. Specs whose terms never
/// exceed m (periodic ones exist) hit the growth cap instead of looping.
SequenceTable table_beyond(const ZlrrSpec& spec, const Int& m) {
    std::size_t n = std::max<std::size_t>(spec.initial_terms.size(), 16);
    while (true) {
        SequenceTable t = generate_sequence(spec, n);
        if (t.terms.back() > m) return t;
        if (n >= 1'000'000)
            fail(ErrorCode::BudgetExceeded, "sequence never exceeds the target value");
        n *= 2;
    }
}

std::string joined_sizes(const std::vector<std::size_t>& xs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

void write_decomposition_json(JsonWriter& w, const SequenceTable& table,
                              const Decomposition& d) {
    GapList gaps = gap_list(d);
    w.begin_object();
    w.key("m");
    w.bigint_value(d.source_value);
    w.key("indices");
    w.begin_array();
    for (std::size_t i : d.indices) w.uint_value(i);
    w.end_array();
    w.key("values");
    w.begin_array();
    for (std::size_t i : d.indices) w.bigint_value(table.terms[i]);
    w.end_array();
    w.key("k");
    w.uint_value(summand_count(d));
    w.key("gaps");
    w.begin_array();
    for (std::size_t g : gaps.gaps) w.uint_value(g);
    w.end_array();
    w.end_object();
}

void write_estimate_json(JsonWriter& w, const EnsembleEstimate& est) {
    w.begin_object();
    w.key("value");
    w.float_value(est.value);
    w.key("std_error");
    w.float_value(est.std_error);
    w.key("n_samples");
    w.uint_value(est.n_samples);
    w.key("ensemble");
    w.string_value(est.tag == EnsembleEstimate::Tag::Micro ? "micro" : "canonical");
    w.key("exact");
    w.bool_value(est.exact);
    w.end_object();
}

LocalStatistic statistic_by_name(const std::string& name, std::size_t window) {
    if (name == "gap2") return gap_at_least2_statistic(window);
    if (name == "present0") return present_at_offset0_statistic(window);
    if (name == "one") return constant_one_statistic(window);
    fail(ErrorCode::WrongSpecShape, "unknown statistic: " + name);
}

void run_seq(const RunConfig& cfg, std::size_t n) {
    SequenceTable table = generate_sequence(cfg.spec(), n);
    std::string out = "n,Z_n\n";
    for (std::size_t i = 0; i < table.terms.size(); ++i)
        out += std::to_string(i) + "," + table.terms[i].get_str() + "\n";
    emit(cfg, out);
}

void run_decompose_single(const RunConfig& cfg, const std::string& m_text) {
    Int m = parse_big(m_text, "--m");
    SequenceTable table = table_beyond(cfg.spec(), m);
    Decomposition d = greedy_decompose(table, m);
    JsonWriter w;
    write_decomposition_json(w, table, d);
    emit(cfg, w.take());
}

void run_decompose_batch(const RunConfig& cfg) {
    ZlrrSpec spec = cfg.spec();
    SequenceTable table = generate_sequence(spec, std::max<std::size_t>(spec.initial_terms.size(), 16));
    std::string out = "m,k,indices,gaps\n";
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Int m = parse_big(line, "input line");
        if (table.terms.back() <= m) table = table_beyond(spec, m);
        Decomposition d = greedy_decompose(table, m);
        GapList gaps = gap_list(d);
        out += m.get_str() + "," + std::to_string(summand_count(d)) + "," +
               joined_sizes(d.indices, ';') + "," + joined_sizes(gaps.gaps, ';') + "\n";
    }
    emit(cfg, out);
}

void run_stats(const RunConfig& cfg, std::size_t n_min, std::size_t n_max) {
    if (n_min > n_max) fail(ErrorCode::WrongSpecShape, "--n-min exceeds --n-max");
    SequenceTable table = generate_sequence(cfg.spec(), n_max + 1);
    std::string out = "N,k,count\n";
    for (std::size_t N = n_min; N <= n_max; ++N) {
        SummandDistribution dist = exact_summand_distribution(table, N);
        for (const auto& [k, count] : dist.counts)
            out += std::to_string(N) + "," + std::to_string(k) + "," + count.get_str() + "\n";
    }
    emit(cfg, out);
}

void run_gaps(const RunConfig& cfg, std::size_t N) {
    SequenceTable table = generate_sequence(cfg.spec(), N + 1);
    GapHistogram hist = exact_gap_distribution(table, N);
    std::string out = "g,count,probability\n";
    for (const auto& [g, count] : hist.counts) {
        Rat p(count, hist.total_gaps);
        p.canonicalize();
        out += std::to_string(g) + "," + count.get_str() + "," + float17(p.get_d()) + "\n";
    }
    emit(cfg, out);
}

void run_strings(const RunConfig& cfg, std::size_t L, const std::string& pattern_text,
                 bool dump) {
    ForbiddenPattern p = parse_pattern(pattern_text);
    Int count = count_legal_strings(L, p);
    std::string out = count.get_str() + "\n";
    if (dump) {
        if (L > 20) fail(ErrorCode::BudgetExceeded, "dump is limited to length 20");
        for (std::uint64_t v = 0; v < (1ull << L); ++v) {
            CoefficientString s;
            s.bits.resize(L);
            for (std::size_t i = 0; i < L; ++i) s.bits[i] = static_cast<int>(v >> i & 1);
            if (!is_legal(s, p)) continue;
            for (std::size_t i = 0; i < L; ++i) out += static_cast<char>('0' + s.bits[i]);
            out += "\n";
        }
    }
    emit(cfg, out);
}

void run_count(const RunConfig& cfg, const std::string& n_text,
               const std::string& pattern_text, long cap_override) {
    Int N = parse_big(n_text, "--n");
    if (N < 0) fail(ErrorCode::WrongSpecShape, "--n must be non-negative");
    ForbiddenPattern p = parse_pattern(pattern_text);
    ZlrrSpec spec = cfg.spec();
    SequenceTable probe = table_beyond(spec, N);
    std::size_t j = 0;
    bool any = false;
    for (std::size_t i = 0; i < probe.terms.size(); ++i)
        if (probe.terms[i] <= N) {
            j = i;
            any = true;
        }
    std::size_t cap;
    if (cap_override >= 0) {
        cap = static_cast<std::size_t>(cap_override);
    } else {
        cap = any ? j + p.length() - 1 : p.length() - 1;
        if (cap > kIndexCapLimit)
            fail(ErrorCode::BudgetExceeded,
                 "target needs index cap " + std::to_string(cap) + ", budget is " +
                     std::to_string(kIndexCapLimit));
    }
    SequenceTable table = generate_sequence(spec, std::max(cap, probe.max_index()));
    Int d = count_decompositions(table, N, p, cap);
    emit(cfg, d.get_str() + "\n");
}

void run_dtotal(const RunConfig& cfg, std::size_t L, const std::string& pattern_text) {
    ForbiddenPattern p = parse_pattern(pattern_text);
    SequenceTable table = generate_sequence(cfg.spec(), L);
    DecompositionCountReport report = total_decompositions(table, L, p);
    const Int& z_l = table.terms[L];
    if (!fits_u64(z_l) || to_u64(z_l) > 10'000'000)
        fail(ErrorCode::BudgetExceeded, "value range too wide to list");
    std::string out = "k,d(k)\n";
    Int zero(0);
    for (std::uint64_t k = 0; k < to_u64(z_l); ++k) {
        auto it = report.value_histogram.find(Int(static_cast<unsigned long>(k)));
        const Int& d = it == report.value_histogram.end() ? zero : it->second;
        out += std::to_string(k) + "," + d.get_str() + "\n";
    }
    emit(cfg, out);
}

void run_matrix(const RunConfig& cfg, const std::string& source, bool want_charpoly,
                bool want_perron, const std::string& pattern_text) {
    TransferMatrix T = source == "paper" ? paper_matrix()
                                         : build_transfer_matrix(parse_pattern(pattern_text));
    JsonWriter w;
    w.begin_object();
    w.key("source");
    w.string_value(source);
    w.key("entries");
    w.begin_array();
    for (std::size_t r = 0; r < T.n; ++r) {
        w.begin_array();
        for (std::size_t c = 0; c < T.n; ++c) w.bigint_value(T.entries[r][c]);
        w.end_array();
    }
    w.end_array();
    if (want_charpoly) {
        IntPolynomial q = char_poly_exact(T);
        w.key("char_poly");
        w.begin_object();
        w.key("coefficients");
        w.begin_array();
        for (const Int& c : q.coefficients) w.bigint_value(c);
        w.end_array();
        w.key("pretty");
        w.string_value(q.pretty());
        w.end_object();
    }
    if (want_perron) {
        w.key("perron");
        w.float_value(perron_eigenvalue(T));
    }
    w.end_object();
    emit(cfg, w.take());
}

void run_ensemble_compare(const RunConfig& cfg, std::size_t N, const std::string& stat_name,
                          std::size_t window) {
    ZlrrSpec spec = cfg.spec();
    SequenceTable table = generate_sequence(spec, N + 1);
    RootInfo info = dominant_root(characteristic_polynomial(spec));
    LocalStatistic F = statistic_by_name(stat_name, window);
    SampleBudget budget;
    budget.seed = cfg.seed;
    budget.n_samples = cfg.samples;
    EnsembleSpec micro_spec{EnsembleEstimate::Tag::Micro, N, 1};
    EnsembleSpec canon_spec{EnsembleEstimate::Tag::Canonical, N, 1};
    EnsembleEstimate micro = expectation_local(table, info, F, micro_spec, budget);
    EnsembleEstimate canon = expectation_local(table, info, F, canon_spec, budget);
    double diff = std::fabs(canon.value - micro.value);
    double combined =
        std::sqrt(canon.std_error * canon.std_error + micro.std_error * micro.std_error);
    JsonWriter w;
    w.begin_object();
    w.key("statistic");
    w.string_value(F.name);
    w.key("window_length");
    w.uint_value(F.window_length);
    w.key("window_offset");
    w.uint_value(1);
    w.key("top_index");
    w.uint_value(N);
    w.key("micro");
    write_estimate_json(w, micro);
    w.key("canonical");
    write_estimate_json(w, canon);
    w.key("abs_diff");
    w.float_value(diff);
    w.key("combined_std_error");
    w.float_value(combined);
    w.key("within_3_se");
    w.bool_value(diff <= 3.0 * combined);
    w.end_object();
    emit(cfg, w.take());
}

void run_ensemble_concentrate(const RunConfig& cfg, std::size_t L, std::size_t samples) {
    SequenceTable table = generate_sequence(cfg.spec(), L + 3);
    ConcentrationReport report = concentration_experiment(table, L, samples, cfg.seed);
    std::string out = "sample_index,N,d,log_d_over_L\n";
    for (const ConcentrationSample& s : report.samples)
        out += std::to_string(s.sample_index) + "," + s.N.get_str() + "," + s.d.get_str() +
               "," + float17(s.log_d_over_L) + "\n";
    emit(cfg, out);
}

void run_report(const RunConfig& cfg, bool text) {
    ZlrrSpec spec = cfg.spec();
    SequenceTable table = generate_sequence(spec, 45);
    RootInfo info = dominant_root(characteristic_polynomial(spec));
    ReportOptions options;
    options.seed = cfg.seed;
    options.ensemble_samples = cfg.samples;
    DiscrepancyReport report = build_discrepancy_report(table, info, options);
    emit(cfg, text ? report_to_text(report) : report_to_json(report));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"Exact greedy decompositions over zero-leading-coefficient linear recurrences"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Plain-text key=value file with the options below");

    RunConfig cfg;
    app.add_option("--coeffs", cfg.coefficients,
                   "Recurrence coefficients c_1..c_L (c_1 must be 0)")
        ->delimiter(',');
    app.add_option("--init", cfg.initial_terms, "Initial terms Z_0..Z_{L-1}")->delimiter(',');
    app.add_option("--seed", cfg.seed, "Random seed for every sampled estimate");
    app.add_option("--samples", cfg.samples, "Sample count for sampled estimates");
    app.add_option("--workers", cfg.workers, "Worker thread cap (0 = auto)");
    app.add_option("--out", cfg.out_path, "Write output to this path instead of stdout");

    auto* seq = app.add_subcommand("seq", "Dump sequence terms as CSV");
    seq->fallthrough();
    std::size_t seq_n = 12;
    seq->add_option("--n", seq_n, "Largest index to dump")->required();
    seq->callback([&] {
        apply_runtime(cfg);
        run_seq(cfg, seq_n);
    });

    auto* dec = app.add_subcommand("decompose", "Greedy-decompose one integer or a stream");
    dec->fallthrough();
    std::string dec_m;
    bool dec_batch = false;
    auto* dec_input = dec->add_option_group("input");
    dec_input->add_option("--m", dec_m, "Integer to decompose (JSON output)");
    dec_input->add_flag("--batch", dec_batch, "Read one integer per line from stdin (CSV output)");
    dec_input->require_option(1);
    dec->callback([&] {
        apply_runtime(cfg);
        if (dec_batch)
            run_decompose_batch(cfg);
        else
            run_decompose_single(cfg, dec_m);
    });

    auto* stats = app.add_subcommand("stats", "Exact summand-count distributions as CSV");
    stats->fallthrough();
    std::size_t stats_min = 10, stats_max = 40;
    stats->add_option("--n-min", stats_min, "Smallest N");
    stats->add_option("--n-max", stats_max, "Largest N");
    stats->callback([&] {
        apply_runtime(cfg);
        run_stats(cfg, stats_min, stats_max);
    });

    auto* gaps = app.add_subcommand("gaps", "Exact pooled gap histogram as CSV");
    gaps->fallthrough();
    std::size_t gaps_n = 35;
    gaps->add_option("--n", gaps_n, "Interval index N for [Z_N, Z_N+1)");
    gaps->callback([&] {
        apply_runtime(cfg);
        run_gaps(cfg, gaps_n);
    });

    auto* strings = app.add_subcommand("strings", "Count (and optionally list) legal strings");
    strings->fallthrough();
    std::size_t strings_len = 0;
    std::string strings_pattern = "1100";
    bool strings_dump = false;
    strings->add_option("--length", strings_len, "String length")->required();
    strings->add_option("--pattern", strings_pattern, "Forbidden 0/1 block");
    strings->add_flag("--dump", strings_dump, "List every legal string (length <= 20)");
    strings->callback([&] {
        apply_runtime(cfg);
        run_strings(cfg, strings_len, strings_pattern, strings_dump);
    });

    auto* count = app.add_subcommand("count", "Count legal decompositions of one integer");
    count->fallthrough();
    std::string count_n;
    std::string count_pattern = "1100";
    long count_cap = -1;
    count->add_option("--n", count_n, "Integer whose decompositions are counted")->required();
    count->add_option("--pattern", count_pattern, "Forbidden 0/1 block");
    count->add_option("--cap", count_cap, "Index cap override (default: fits the target)");
    count->callback([&] {
        apply_runtime(cfg);
        run_count(cfg, count_n, count_pattern, count_cap);
    });

    auto* dtotal = app.add_subcommand("dtotal", "Per-value decomposition counts as CSV");
    dtotal->fallthrough();
    std::size_t dtotal_len = 0;
    std::string dtotal_pattern = "1100";
    dtotal->add_option("--length", dtotal_len, "String length L; values below Z_L are listed")
        ->required();
    dtotal->add_option("--pattern", dtotal_pattern, "Forbidden 0/1 block");
    dtotal->callback([&] {
        apply_runtime(cfg);
        run_dtotal(cfg, dtotal_len, dtotal_pattern);
    });

    auto* matrix = app.add_subcommand("matrix", "Transfer matrix, characteristic polynomial, Perron root");
    matrix->fallthrough();
    std::string matrix_source = "derived";
    std::string matrix_pattern = "1100";
    bool matrix_charpoly = false, matrix_perron = false;
    matrix->add_option("--source", matrix_source, "Which matrix to emit")
        ->check(CLI::IsMember({"paper", "derived"}));
    matrix->add_option("--pattern", matrix_pattern, "Forbidden block for the derived matrix");
    matrix->add_flag("--charpoly", matrix_charpoly, "Include det(xI - T)");
    matrix->add_flag("--perron", matrix_perron, "Include the Perron eigenvalue");
    matrix->callback([&] {
        apply_runtime(cfg);
        run_matrix(cfg, matrix_source, matrix_charpoly, matrix_perron, matrix_pattern);
    });

    auto* ensemble = app.add_subcommand("ensemble", "Ensemble comparison and concentration runs");
    ensemble->fallthrough();
    ensemble->require_subcommand(1);

    auto* compare = ensemble->add_subcommand("compare", "Micro vs canonical local statistic");
    compare->fallthrough();
    std::size_t compare_n = 40, compare_window = 8;
    std::string compare_stat = "gap2";
    compare->add_option("--n", compare_n, "Interval index (micro) and horizon (canonical)");
    compare->add_option("--stat", compare_stat, "Local statistic")
        ->check(CLI::IsMember({"gap2", "present0", "one"}));
    compare->add_option("--window", compare_window, "Window length in indices");
    compare->callback([&] {
        apply_runtime(cfg);
        run_ensemble_compare(cfg, compare_n, compare_stat, compare_window);
    });

    auto* concentrate = ensemble->add_subcommand("concentrate", "log d(N)/L sample runs");
    concentrate->fallthrough();
    std::size_t conc_len = 30, conc_samples = 200;
    concentrate->add_option("--length", conc_len, "Interval index L for [Z_L, Z_L+1)");
    concentrate->add_option("--samples", conc_samples, "Number of sampled integers");
    concentrate->callback([&] {
        apply_runtime(cfg);
        run_ensemble_concentrate(cfg, conc_len, conc_samples);
    });

    auto* report = app.add_subcommand("report", "Consolidated published-vs-computed diff table");
    report->fallthrough();
    bool report_text = false;
    report->add_flag("--text", report_text, "Human-readable lines instead of JSON");
    report->callback([&] {
        apply_runtime(cfg);
        run_report(cfg, report_text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace zlrr
