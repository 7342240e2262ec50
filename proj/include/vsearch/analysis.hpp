#pragma once

#include "vsearch/evaluate.hpp"
#include "vsearch/stats.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsearch {

struct EmptyGroup : std::invalid_argument {
    explicit EmptyGroup(const std::string& what) : std::invalid_argument(what) {}
};

struct UncoveredValue : std::out_of_range {
    explicit UncoveredValue(const std::string& what) : std::out_of_range(what) {}
};

/// A score with its ground truth.
struct JoinedScore {
    ScoreRecord score;
    ManifestEntry entry;
};

/// Throws std::out_of_range for scores without a manifest entry.
std::vector<JoinedScore> join_scores(std::span<const ScoreRecord> scores, const ManifestIndex& index);

struct GroupKey {
    std::string model;
    Family family = Family::CircleSizes;
    Condition condition = Condition::Large;
    Mode mode = Mode::Cells;

    friend bool operator==(const GroupKey&, const GroupKey&) = default;
    friend bool operator<(const GroupKey& a, const GroupKey& b);

    /// "model|Family|Condition|mode"
    std::string label() const;
};

GroupKey group_of(const JoinedScore& s);

/// Splits scores into (model, family, condition, mode) groups in key order.
std::vector<std::pair<GroupKey, std::vector<JoinedScore>>> group_scores(std::span<const JoinedScore> scores);

struct AccuracyPoint {
    int n_distractors = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct AccuracyCurve {
    GroupKey key;
    std::vector<AccuracyPoint> points; // ascending n
    AccuracyPoint overall;             // n_distractors unused
};

/// Per-set-size accuracy with Wilson 95% intervals for one group of Cells scores.
AccuracyCurve accuracy_by_set_size(std::span<const JoinedScore> group);
/// One curve per Cells-mode group.
std::vector<AccuracyCurve> accuracy_curves(std::span<const JoinedScore> scores);

struct ErrorPoint {
    int n_distractors = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct ErrorCurve {
    GroupKey key;
    std::vector<ErrorPoint> points;
    ErrorPoint overall;
};

/// Per-set-size mean pixel error with normal-approximation 95% intervals.
ErrorCurve error_by_set_size(std::span<const JoinedScore> group);
std::vector<ErrorCurve> error_curves(std::span<const JoinedScore> scores);

struct CorrelationResult {
    GroupKey key;
    double r = 0.0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    std::uint64_t n_trials = 0;
    bool degenerate = false;
    /// r over (n, mean accuracy at n) pairs; absent with fewer than 3 set sizes
    /// or constant means.
    std::optional<double> r_set_size_means;
};

/// Trial-level (point-biserial) correlation between distractor count and
/// correctness. Throws DegenerateInput for fewer than 3 trials.
CorrelationResult pearson_set_size(std::span<const JoinedScore> group);

/// Sets p_adjusted = min(1, k * p_raw) with k = results.size().
void apply_bonferroni(std::span<CorrelationResult> results);

/// Correlations for every Cells-mode group, Bonferroni-adjusted as one family.
std::vector<CorrelationResult> set_size_correlations(std::span<const JoinedScore> scores);

struct CellBias {
    std::uint64_t picks = 0;
    std::uint64_t correct_picks = 0;
    std::uint64_t truth_count = 0;
    std::optional<double> precision; // absent when never picked
    std::optional<double> recall;    // absent when never the truth
    double selection_pct = 0.0;
};

struct SpatialBiasTable {
    GroupKey key;
    std::uint64_t trials = 0;
    std::array<CellBias, 4> cells; // row-major (1,1) (1,2) (2,1) (2,2)
    std::uint64_t invalid = 0;
    double invalid_pct = 0.0;
};

SpatialBiasTable spatial_bias_table(std::span<const JoinedScore> group);
std::vector<SpatialBiasTable> spatial_bias_tables(std::span<const JoinedScore> scores);

struct Bin {
    int lo = 0; // inclusive
    int hi = 0; // inclusive
    std::string label() const;
};

/// Distractor bins used for the human sample of each family.
std::vector<Bin> human_bins(Family f);
/// Ten bins of width 10 over 0..99.
std::vector<Bin> finetune_bins();

struct BinRow {
    Bin bin;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double mean = 0.0;
};

struct BinnedTable {
    GroupKey key;
    std::vector<BinRow> rows;
};

/// Cells accuracy per bin. Bins must be ordered and disjoint; a score whose
/// distractor count falls in no bin raises UncoveredValue.
BinnedTable bin_results(std::span<const JoinedScore> group, std::span<const Bin> bins);

} // namespace vsearch
