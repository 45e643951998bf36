#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zlrr/recurrence.hpp"

namespace zlrr {

enum class Verdict { Match, Mismatch, Incomparable };

const char* verdict_name(Verdict v);

/// One tracked quantity: the published value next to what this code measures.
/// paper_ref is a citation string carried verbatim into the output so a
/// reader can look the claim up.
struct ReportEntry {
    std::string quantity_name;
    std::string paper_ref;
    std::optional<double> paper_value;
    std::optional<double> computed_value;
    std::string method;
    std::optional<double> abs_diff;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Incomparable;
    std::string note;
};

struct DiscrepancyReport {
    std::vector<ReportEntry> entries;
    std::size_t match_count = 0;
    std::size_t mismatch_count = 0;
    std::size_t incomparable_count = 0;

    const ReportEntry* find(const std::string& quantity_name) const;
};

struct ReportOptions {
    std::uint64_t seed = 1;
    /// Canonical-ensemble sample count for the equivalence entry.
    std::uint64_t ensemble_samples = 100'000;
    /// Length used for the concentration entry (kept small; the full trend
    /// run lives in the test suite).
    std::size_t concentration_length = 20;
    std::size_t concentration_samples = 100;
    /// Moment slopes are fit over [slope_lo, slope_hi].
    std::size_t slope_lo = 20;
    std::size_t slope_hi = 40;
    /// Gap histogram interval and fitted bin range.
    std::size_t gap_N = 35;
    std::size_t gap_k_min = 2;
    std::size_t gap_k_max = 8;
};

/// Runs every comparison and assembles the table. The table must reach
/// index max(slope_hi, gap_N) + 1; shorter tables raise MissingInput.
/// Mismatches are content, not failures.
DiscrepancyReport build_discrepancy_report(const SequenceTable& table, const RootInfo& info,
                                           const ReportOptions& options);

std::string report_to_json(const DiscrepancyReport& report);
std::string report_to_text(const DiscrepancyReport& report);

}  // namespace zlrr
