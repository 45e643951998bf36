#include "zlrr/greedy.hpp"

#include <functional>

#include "doctest.h"
#include "zlrr/error.hpp"

using namespace zlrr;

namespace {

SequenceTable default_table(std::size_t n_max) {
    return generate_sequence(ZlrrSpec{{0, 1, 1}, {1, 2, 3}}, n_max);
}

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

Int reconstruct(const SequenceTable& t, const Decomposition& d) {
    Int sum = 0;
    for (std::size_t i : d.indices) sum += t.terms[i];
    return sum;
}

}  // namespace

TEST_CASE("zero decomposes to the empty index list") {
    SequenceTable t = default_table(12);
    Decomposition d = greedy_decompose(t, 0);
    CHECK(d.indices.empty());
    CHECK(summand_count(d) == 0);
    CHECK(gap_list(d).gaps.empty());
}

TEST_CASE("22 decomposes as 19 + 3 with indices 9 and 3") {
    SequenceTable t = default_table(12);
    Decomposition d = greedy_decompose(t, 22);
    REQUIRE(d.indices.size() == 2);
    CHECK(d.indices[0] == 9);
    CHECK(d.indices[1] == 3);  // value 3 appears at indices 2 and 3; ties pick 3
    CHECK(summand_count(d) == 2);
    REQUIRE(gap_list(d).gaps.size() == 1);
    CHECK(gap_list(d).gaps[0] == 6);
}

TEST_CASE("7 decomposes as Z_5 + Z_0 with gap 5") {
    SequenceTable t = default_table(12);
    Decomposition d = greedy_decompose(t, 7);
    REQUIRE(d.indices.size() == 2);
    CHECK(d.indices[0] == 5);
    CHECK(d.indices[1] == 0);
    CHECK(gap_list(d).gaps == std::vector<std::size_t>{5});
}

TEST_CASE("every cached term decomposes to a single summand") {
    SequenceTable t = default_table(13);
    for (std::size_t n = 0; n + 1 < t.terms.size(); ++n) {
        Decomposition d = greedy_decompose(t, t.terms[n]);
        REQUIRE(d.indices.size() == 1);
        CHECK(t.terms[d.indices[0]] == t.terms[n]);
    }
    // The duplicated value 3 resolves to the larger index.
    CHECK(greedy_decompose(t, 3).indices[0] == 3);
}

TEST_CASE("indices strictly decrease and values reconstruct the input") {
    SequenceTable t = default_table(35);
    for (long m = 0; m <= 20000; ++m) {
        Decomposition d = greedy_decompose(t, m);
        for (std::size_t j = 1; j < d.indices.size(); ++j)
            REQUIRE(d.indices[j] < d.indices[j - 1]);
        REQUIRE(reconstruct(t, d) == m);
    }
}

TEST_CASE("bulk gaps are at least 5 and gap 3 only appears terminally") {
    // Z_{i+1} - Z_i = Z_{i-4} forces any interior gap to be >= 5; a gap of 3
    // can only separate the last two indices, and 4 never occurs.
    SequenceTable t = default_table(35);
    for (long m = 1; m <= 20000; ++m) {
        Decomposition d = greedy_decompose(t, m);
        GapList g = gap_list(d);
        for (std::size_t j = 0; j < g.gaps.size(); ++j) {
            std::size_t gap = g.gaps[j];
            REQUIRE(gap != 4);
            if (j + 1 < g.gaps.size()) REQUIRE(gap >= 5);
            if (gap < 5) REQUIRE(gap == 3);
        }
    }
}

TEST_CASE("decomposing past the table throws TableTooSmall") {
    SequenceTable t = default_table(12);
    CHECK(throws_code(ErrorCode::TableTooSmall, [&] { greedy_decompose(t, t.terms[12]); }));
    CHECK(throws_code(ErrorCode::TableTooSmall, [&] { greedy_decompose(t, 100000); }));
}

TEST_CASE("prefix property holds exhaustively on [Z_9, Z_10)") {
    SequenceTable t = default_table(12);
    PrefixCheckReport r = verify_prefix_property(t, 9);
    CHECK(r.total == 6);
    CHECK(r.passes == 6);
    CHECK(r.failures == 0);
    CHECK(r.exhaustive);
}

TEST_CASE("prefix property on a degenerate interval is a vacuous pass") {
    SequenceTable t = default_table(12);
    PrefixCheckReport r = verify_prefix_property(t, 2);  // Z_2 = Z_3 = 3
    CHECK(r.total == 0);
    CHECK(r.failures == 0);
}

TEST_CASE("prefix property holds on the full interval at N = 20") {
    SequenceTable t = default_table(25);
    PrefixCheckReport r = verify_prefix_property(t, 20);
    CHECK(r.exhaustive);
    CHECK(r.total == t.terms[21] - t.terms[20]);
    CHECK(r.failures == 0);
}
