#include "zlrr/ensemble.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "doctest.h"
#include "zlrr/error.hpp"

using namespace zlrr;

namespace {

SequenceTable default_table(std::size_t n_max) {
    return generate_sequence(ZlrrSpec{{0, 1, 1}, {1, 2, 3}}, n_max);
}

RootInfo default_root() {
    return dominant_root(characteristic_polynomial(ZlrrSpec{{0, 1, 1}, {1, 2, 3}}));
}

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("window statistics evaluate their advertised predicates") {
    LocalStatistic gap2 = gap_at_least2_statistic(8);
    CHECK(gap2.window_length == 8);
    // Summands at window offsets 0 and 2: separated by 2, statistic fires.
    CHECK(gap2.evaluator(0b101) == 1.0);
    // Adjacent summands only: no pair at distance >= 2.
    CHECK(gap2.evaluator(0b11) == 0.0);
    CHECK(gap2.evaluator(0b0) == 0.0);
    CHECK(gap2.evaluator(0b10000000) == 0.0);  // single summand
    CHECK(gap2.evaluator(0b10000001) == 1.0);  // distance 7

    LocalStatistic p0 = present_at_offset0_statistic(4);
    CHECK(p0.evaluator(0b1) == 1.0);
    CHECK(p0.evaluator(0b1110) == 0.0);

    LocalStatistic one = constant_one_statistic(4);
    CHECK(one.evaluator(0) == 1.0);
    CHECK(one.evaluator(15) == 1.0);
}

TEST_CASE("microcanonical samples are uniform on the interval and reproducible") {
    SequenceTable t = default_table(12);
    std::vector<Int> a = sample_microcanonical(t, 9, 7, 5);
    std::vector<Int> b = sample_microcanonical(t, 9, 7, 5);
    REQUIRE(a.size() == 5);
    CHECK(a == b);
    for (const Int& m : a) {
        CHECK(m >= 19);
        CHECK(m < 25);
    }
    std::vector<Int> c = sample_microcanonical(t, 9, 8, 5);
    CHECK(a != c);
}

TEST_CASE("microcanonical sampling of a degenerate interval throws") {
    SequenceTable t = default_table(12);
    CHECK(throws_code(ErrorCode::EmptyInterval, [&] { sample_microcanonical(t, 2, 1, 3); }));
}

TEST_CASE("microcanonical samples hit every residue with the right frequency") {
    SequenceTable t = default_table(12);
    const std::size_t n = 60000;
    std::vector<Int> draws = sample_microcanonical(t, 9, 123, n);
    std::map<long, std::size_t> freq;
    for (const Int& m : draws) ++freq[m.get_si()];
    REQUIRE(freq.size() == 6);
    double p = 1.0 / 6.0;
    double tol = 3.0 * std::sqrt(p * (1 - p) / n);
    for (const auto& [value, count] : freq) {
        double f = static_cast<double>(count) / n;
        CHECK(std::fabs(f - p) < tol);
    }
}

TEST_CASE("canonical patterns descend from the horizon by geometric decrements") {
    RootInfo info = default_root();
    RandomStream rng(5);
    const int reps = 40000;
    std::map<std::size_t, std::size_t> first_decrement_freq;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<std::size_t> pattern = sample_canonical(info, 40, rng);
        REQUIRE(!pattern.empty());
        REQUIRE(pattern.front() == 40);
        for (std::size_t j = 1; j < pattern.size(); ++j) REQUIRE(pattern[j] < pattern[j - 1]);
        // Later decrements are conditioned on not running off the bottom of
        // the index range, which tilts their law; the first decrement from a
        // horizon this high is truncated with probability < 2e-5, so it is
        // the one to test.
        if (pattern.size() >= 2) ++first_decrement_freq[40 - pattern[1]];
    }
    double p1 = 1.0 - 1.0 / info.lambda1;  // 0.24512...
    for (std::size_t g = 1; g <= 3; ++g) {
        double expected = p1 * std::pow(info.lambda1, -static_cast<double>(g - 1));
        double f = static_cast<double>(first_decrement_freq[g]) / reps;
        double se = std::sqrt(expected * (1 - expected) / reps);
        CHECK(std::fabs(f - expected) < 4.0 * se);
    }
}

TEST_CASE("canonical sampling by seed is reproducible") {
    RootInfo info = default_root();
    std::vector<std::size_t> a = sample_canonical(info, 30, 99);
    std::vector<std::size_t> b = sample_canonical(info, 30, 99);
    CHECK(a == b);
}

TEST_CASE("prefix frequency of the full-interval prefix is 1") {
    SequenceTable t = default_table(12);
    PrefixPattern p{{9}};
    EnsembleEstimate e = prefix_frequency(t, 9, p, EstimateMode::Exact, SampleBudget{});
    CHECK(e.exact);
    CHECK(e.value == 1.0);
    CHECK(e.std_error == 0.0);
}

TEST_CASE("prefix frequency counts longer decompositions as matches") {
    SequenceTable t = default_table(12);
    // Exactly 2 of the 6 integers in [19, 25) start with indices 9, 3:
    // 22 = 19 + 3 and 23 = 19 + 3 + 1.
    PrefixPattern p{{9, 3}};
    EnsembleEstimate e = prefix_frequency(t, 9, p, EstimateMode::Exact, SampleBudget{});
    CHECK(e.exact);
    CHECK(e.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("prefix frequency of an impossible prefix is 0") {
    SequenceTable t = default_table(12);
    PrefixPattern p{{9, 8}};
    EnsembleEstimate e = prefix_frequency(t, 9, p, EstimateMode::Exact, SampleBudget{});
    CHECK(e.value == 0.0);
}

TEST_CASE("prefix frequency validates the pattern shape") {
    SequenceTable t = default_table(12);
    CHECK(throws_code(ErrorCode::WrongSpecShape, [&] {
        prefix_frequency(t, 9, PrefixPattern{{3, 9}}, EstimateMode::Exact, SampleBudget{});
    }));
    CHECK(throws_code(ErrorCode::WrongSpecShape, [&] {
        prefix_frequency(t, 9, PrefixPattern{{}}, EstimateMode::Exact, SampleBudget{});
    }));
    CHECK(throws_code(ErrorCode::WrongSpecShape, [&] {
        prefix_frequency(t, 9, PrefixPattern{{11}}, EstimateMode::Exact, SampleBudget{});
    }));
}

TEST_CASE("prefix frequency respects the exact-scan budget") {
    SequenceTable t = default_table(41);
    SampleBudget tiny;
    tiny.max_exact_scan = 10;
    CHECK(throws_code(ErrorCode::BudgetExceeded, [&] {
        prefix_frequency(t, 40, PrefixPattern{{40}}, EstimateMode::Exact, tiny);
    }));
}

TEST_CASE("sampled prefix frequency approximates the exact one") {
    SequenceTable t = default_table(22);
    PrefixPattern p{{20, 14}};
    EnsembleEstimate exact = prefix_frequency(t, 20, p, EstimateMode::Exact, SampleBudget{});
    SampleBudget b;
    b.n_samples = 40000;
    b.seed = 3;
    EnsembleEstimate sampled = prefix_frequency(t, 20, p, EstimateMode::Sampled, b);
    CHECK(!sampled.exact);
    CHECK(sampled.std_error > 0.0);
    CHECK(std::fabs(sampled.value - exact.value) < 4.0 * sampled.std_error);
}

TEST_CASE("the constant statistic has expectation 1 in both ensembles") {
    SequenceTable t = default_table(27);
    RootInfo info = default_root();
    LocalStatistic one = constant_one_statistic(8);
    SampleBudget b;
    b.n_samples = 500;

    EnsembleSpec micro{EnsembleEstimate::Tag::Micro, 25, 1};
    EnsembleEstimate em = expectation_local(t, info, one, micro, b);
    CHECK(em.exact);
    CHECK(em.value == 1.0);

    EnsembleSpec canon{EnsembleEstimate::Tag::Canonical, 25, 1};
    EnsembleEstimate ec = expectation_local(t, info, one, canon, b);
    CHECK(!ec.exact);
    CHECK(ec.value == doctest::Approx(1.0));
    CHECK(ec.n_samples == 500);
}

TEST_CASE("the gap statistic separates the two ensembles at N = 25") {
    SequenceTable t = default_table(27);
    RootInfo info = default_root();
    LocalStatistic gap2 = gap_at_least2_statistic(8);
    SampleBudget b;
    b.n_samples = 100000;
    b.seed = 1;

    // Micro side is an exact scan of the 551 integers in [Z_25, Z_26);
    // every greedy window of width 8 below the leading index holds at most
    // one summand pair and never one separated by >= 2 inside the window.
    EnsembleSpec micro{EnsembleEstimate::Tag::Micro, 25, 1};
    EnsembleEstimate em = expectation_local(t, info, gap2, micro, b);
    CHECK(em.exact);
    CHECK(em.value == 0.0);

    EnsembleSpec canon{EnsembleEstimate::Tag::Canonical, 25, 1};
    EnsembleEstimate ec = expectation_local(t, info, gap2, canon, b);
    CHECK(!ec.exact);
    CHECK(ec.value == doctest::Approx(0.5133123630767321).epsilon(0.02));
    CHECK(ec.std_error > 0.0);
    // The two ensembles genuinely disagree on this statistic: the gap is
    // hundreds of standard errors wide.
    CHECK(std::fabs(ec.value - em.value) > 3.0 * ec.std_error);
}

TEST_CASE("present-at-offset statistic matches a direct interval scan") {
    SequenceTable t = default_table(22);
    RootInfo info = default_root();
    LocalStatistic p0 = present_at_offset0_statistic(4);
    SampleBudget b;
    EnsembleSpec micro{EnsembleEstimate::Tag::Micro, 20, 1};
    EnsembleEstimate e = expectation_local(t, info, p0, micro, b);
    REQUIRE(e.exact);

    // Directly: fraction of m in [Z_20, Z_21) whose greedy decomposition has
    // a summand at index 20 - 1 - 4 + 1 = 16.
    Int hits = 0, total = 0;
    for (Int m = t.terms[20]; m < t.terms[21]; ++m) {
        Decomposition d = greedy_decompose(t, m);
        bool has16 = false;
        for (std::size_t i : d.indices) has16 = has16 || i == 16;
        if (has16) ++hits;
        ++total;
    }
    Rat expected(hits, total);
    expected.canonicalize();
    CHECK(e.value == doctest::Approx(expected.get_d()).epsilon(1e-15));
}

TEST_CASE("window placement validates offsets and widths") {
    SequenceTable t = default_table(27);
    RootInfo info = default_root();
    SampleBudget b;
    CHECK(throws_code(ErrorCode::WrongSpecShape, [&] {
        expectation_local(t, info, gap_at_least2_statistic(0),
                          EnsembleSpec{EnsembleEstimate::Tag::Micro, 25, 1}, b);
    }));
    CHECK(throws_code(ErrorCode::WrongSpecShape, [&] {
        // Window of width 8 at offset 1 does not fit under top index 6.
        expectation_local(t, info, gap_at_least2_statistic(8),
                          EnsembleSpec{EnsembleEstimate::Tag::Micro, 6, 1}, b);
    }));
}

TEST_CASE("concentration experiment with zero samples is empty") {
    SequenceTable t = default_table(30);
    ConcentrationReport r = concentration_experiment(t, 12, 0, 1);
    CHECK(r.samples.empty());
    CHECK(r.zero_count_findings == 0);
}

TEST_CASE("concentration experiment finds a decomposition for every sample") {
    SequenceTable t = default_table(30);
    ConcentrationReport r = concentration_experiment(t, 12, 40, 7);
    REQUIRE(r.samples.size() == 40);
    CHECK(r.zero_count_findings == 0);
    for (const ConcentrationSample& s : r.samples) {
        CHECK(s.N >= t.terms[12]);
        CHECK(s.N < t.terms[13]);
        CHECK(s.d >= 1);
        CHECK(std::isfinite(s.log_d_over_L));
    }
    CHECK(r.mean > 0.0);
    CHECK(r.sd >= 0.0);
    CHECK(r.ref_log_2_over_lambda1 == doctest::Approx(0.4119476062369834).epsilon(1e-9));
    CHECK(r.measured_growth_ratio == doctest::Approx(1.8392867552141612).epsilon(1e-6));

    ConcentrationReport again = concentration_experiment(t, 12, 40, 7);
    REQUIRE(again.samples.size() == r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(again.samples[i].N == r.samples[i].N);
        CHECK(again.samples[i].d == r.samples[i].d);
    }
}

TEST_CASE("concentration experiment enforces the search budget") {
    SequenceTable t = default_table(50);
    CHECK(throws_code(ErrorCode::BudgetExceeded,
                      [&] { concentration_experiment(t, 43, 5, 1); }));
}
