#include "zlrr/greedy.hpp"

#include <algorithm>

#include "zlrr/error.hpp"
#include "zlrr/rng.hpp"

namespace zlrr {

namespace {

/// Largest index in [0, cap] whose term is <= m, ties resolved upward.
/// Returns false when every term exceeds m.
bool largest_fitting_index(const SequenceTable& table, const Int& m, std::size_t cap,
                           std::size_t& out) {
    const auto& t = table.terms;
    if (table.non_decreasing) {
        auto end = t.begin() + static_cast<std::ptrdiff_t>(cap + 1);
        auto it = std::upper_bound(t.begin(), end, m);
        if (it == t.begin()) return false;
        out = static_cast<std::size_t>(it - t.begin()) - 1;
        return true;
    }
    bool found = false;
    for (std::size_t i = 0; i <= cap; ++i) {
        if (t[i] <= m && (!found || t[i] >= t[out])) {
            out = i;
            found = true;
        }
    }
    return found;
}

}  // namespace

Decomposition greedy_decompose(const SequenceTable& table, const Int& m) {
    if (m < 0) fail(ErrorCode::TableTooSmall, "no term fits a negative value");
    Int largest = table.non_decreasing
                      ? table.terms.back()
                      : *std::max_element(table.terms.begin(), table.terms.end());
    if (largest <= m)
        fail(ErrorCode::TableTooSmall,
             "largest cached term " + to_decimal(largest) + " does not exceed " + to_decimal(m));
    Decomposition d;
    d.source_value = m;
    Int remainder = m;
    std::size_t cap = table.max_index();
    while (remainder > 0) {
        std::size_t i = 0;
        if (!largest_fitting_index(table, remainder, cap, i))
            fail(ErrorCode::TableTooSmall, "no remaining term fits " + to_decimal(remainder));
        d.indices.push_back(i);
        remainder -= table.terms[i];
        if (i == 0) {
            if (remainder > 0)
                fail(ErrorCode::TableTooSmall, "indices exhausted at remainder " + to_decimal(remainder));
            break;
        }
        cap = i - 1;
    }
    return d;
}

std::size_t summand_count(const Decomposition& d) { return d.indices.size(); }

GapList gap_list(const Decomposition& d) {
    GapList g;
    if (d.indices.size() < 2) return g;
    g.gaps.reserve(d.indices.size() - 1);
    for (std::size_t j = 1; j < d.indices.size(); ++j)
        g.gaps.push_back(d.indices[j - 1] - d.indices[j]);
    return g;
}

PrefixCheckReport verify_prefix_property(const SequenceTable& table, std::size_t N) {
    if (N + 1 > table.max_index()) fail(ErrorCode::TableTooSmall, "need terms through N+1");
    const Int lo = table.terms[N], hi = table.terms[N + 1];
    Int width = hi - lo;
    if (width <= 0) return {};

    auto expected_first = [&](const Int& m) {
        std::size_t i = 0;
        largest_fitting_index(table, m, table.max_index(), i);
        return i;
    };
    auto check_one = [&](const Int& m) {
        Decomposition d = greedy_decompose(table, m);
        if (d.indices.empty() || d.indices.front() != expected_first(m)) return false;
        Int sum = 0;
        for (std::size_t j = 0; j < d.indices.size(); ++j) {
            if (j > 0 && d.indices[j] >= d.indices[j - 1]) return false;
            sum += table.terms[d.indices[j]];
        }
        return sum == m;
    };

    PrefixCheckReport report;
    const std::uint64_t kExhaustiveCap = 1'000'000;
    if (width <= kExhaustiveCap) {
        report.exhaustive = true;
        for (Int m = lo; m < hi; ++m) {
            ++report.total;
            check_one(m) ? ++report.passes : ++report.failures;
        }
    } else {
        report.exhaustive = false;
        RandomStream rng(1, N);
        for (int s = 0; s < 100'000; ++s) {
            Int m = lo + rng.uniform_below(width);
            ++report.total;
            check_one(m) ? ++report.passes : ++report.failures;
        }
    }
    return report;
}

}  // namespace zlrr
