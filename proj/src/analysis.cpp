#include "vsearch/analysis.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace vsearch {

std::vector<JoinedScore> join_scores(std::span<const ScoreRecord> scores, const ManifestIndex& index) {
    std::vector<JoinedScore> out;
    out.reserve(scores.size());
    for (const auto& s : scores) {
        const auto it = index.find(s.trial_id);
        if (it == index.end()) throw std::out_of_range("score " + s.trial_id + " has no manifest entry");
        out.push_back({s, it->second});
    }
    return out;
}

bool operator<(const GroupKey& a, const GroupKey& b) {
    return std::tie(a.model, a.family, a.condition, a.mode) < std::tie(b.model, b.family, b.condition, b.mode);
}

std::string GroupKey::label() const {
    return model + "|" + std::string(to_string(family)) + "|" + std::string(to_string(condition)) + "|" +
           std::string(to_string(mode));
}

GroupKey group_of(const JoinedScore& s) {
    return GroupKey{s.score.model, s.entry.task_condition.family, s.entry.task_condition.condition,
                    s.score.mode};
}

std::vector<std::pair<GroupKey, std::vector<JoinedScore>>> group_scores(std::span<const JoinedScore> scores) {
    std::map<GroupKey, std::vector<JoinedScore>> groups;
    for (const auto& s : scores) groups[group_of(s)].push_back(s);
    return {std::make_move_iterator(groups.begin()), std::make_move_iterator(groups.end())};
}

namespace {

void require_nonempty(std::span<const JoinedScore> group, const char* what) {
    if (group.empty()) throw EmptyGroup(std::string(what) + ": empty group");
}

void require_mode(std::span<const JoinedScore> group, Mode mode, const char* what) {
    for (const auto& s : group)
        if (s.score.mode != mode)
            throw ModeMismatch(std::string(what) + ": expected " + std::string(to_string(mode)) + " scores");
}

AccuracyPoint accuracy_point(int n, std::uint64_t trials, std::uint64_t successes) {
    AccuracyPoint p;
    p.n_distractors = n;
    p.trials = trials;
    p.successes = successes;
    p.mean = static_cast<double>(successes) / static_cast<double>(trials);
    const auto ci = wilson_interval(successes, trials);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
    return p;
}

ErrorPoint error_point(int n, std::span<const double> errors) {
    const auto m = mean_interval(errors);
    return ErrorPoint{n, m.n, m.mean, m.ci.low, m.ci.high};
}

template <typename Curve, typename F>
std::vector<Curve> per_group(std::span<const JoinedScore> scores, Mode mode, F f) {
    std::vector<Curve> out;
    for (const auto& [key, group] : group_scores(scores))
        if (key.mode == mode) out.push_back(f(group));
    return out;
}

} // namespace

AccuracyCurve accuracy_by_set_size(std::span<const JoinedScore> group) {
    require_nonempty(group, "accuracy_by_set_size");
    require_mode(group, Mode::Cells, "accuracy_by_set_size");
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> by_n; // trials, successes
    std::uint64_t trials = 0, successes = 0;
    for (const auto& s : group) {
        auto& [t, k] = by_n[s.entry.n_distractors];
        const bool ok = s.score.correct.value_or(false);
        ++t;
        k += ok;
        ++trials;
        successes += ok;
    }
    AccuracyCurve c;
    c.key = group_of(group.front());
    for (const auto& [n, tk] : by_n) c.points.push_back(accuracy_point(n, tk.first, tk.second));
    c.overall = accuracy_point(-1, trials, successes);
    return c;
}

std::vector<AccuracyCurve> accuracy_curves(std::span<const JoinedScore> scores) {
    return per_group<AccuracyCurve>(scores, Mode::Cells,
                                    [](const auto& g) { return accuracy_by_set_size(g); });
}

ErrorCurve error_by_set_size(std::span<const JoinedScore> group) {
    require_nonempty(group, "error_by_set_size");
    require_mode(group, Mode::Coordinates, "error_by_set_size");
    std::map<int, std::vector<double>> by_n;
    std::vector<double> all;
    all.reserve(group.size());
    for (const auto& s : group) {
        const double e = s.score.error_px.value_or(kMaxErrorPx);
        by_n[s.entry.n_distractors].push_back(e);
        all.push_back(e);
    }
    ErrorCurve c;
    c.key = group_of(group.front());
    for (const auto& [n, errs] : by_n) c.points.push_back(error_point(n, errs));
    c.overall = error_point(-1, all);
    return c;
}

std::vector<ErrorCurve> error_curves(std::span<const JoinedScore> scores) {
    return per_group<ErrorCurve>(scores, Mode::Coordinates, [](const auto& g) { return error_by_set_size(g); });
}

CorrelationResult pearson_set_size(std::span<const JoinedScore> group) {
    require_nonempty(group, "pearson_set_size");
    require_mode(group, Mode::Cells, "pearson_set_size");
    std::vector<double> x, y;
    x.reserve(group.size());
    y.reserve(group.size());
    std::map<int, std::pair<double, double>> means; // sum, count
    for (const auto& s : group) {
        const double ok = s.score.correct.value_or(false) ? 1.0 : 0.0;
        x.push_back(s.entry.n_distractors);
        y.push_back(ok);
        auto& [sum, cnt] = means[s.entry.n_distractors];
        sum += ok;
        cnt += 1.0;
    }
    const Pearson p = pearson(x, y);
    CorrelationResult c;
    c.key = group_of(group.front());
    c.n_trials = p.n;
    c.degenerate = p.degenerate;
    c.r = p.r;
    c.p_raw = p.degenerate ? 1.0 : pearson_p_value(p.r, p.n);
    c.p_adjusted = c.p_raw;

    if (means.size() >= 3) {
        std::vector<double> mx, my;
        for (const auto& [n, sc] : means) {
            mx.push_back(n);
            my.push_back(sc.first / sc.second);
        }
        const Pearson pm = pearson(mx, my);
        if (!pm.degenerate) c.r_set_size_means = pm.r;
    }
    return c;
}

void apply_bonferroni(std::span<CorrelationResult> results) {
    for (auto& r : results) r.p_adjusted = bonferroni(r.p_raw, results.size());
}

std::vector<CorrelationResult> set_size_correlations(std::span<const JoinedScore> scores) {
    std::vector<CorrelationResult> out;
    for (const auto& [key, group] : group_scores(scores))
        if (key.mode == Mode::Cells && group.size() >= 3) out.push_back(pearson_set_size(group));
    apply_bonferroni(out);
    return out;
}

SpatialBiasTable spatial_bias_table(std::span<const JoinedScore> group) {
    require_nonempty(group, "spatial_bias_table");
    require_mode(group, Mode::Cells, "spatial_bias_table");
    SpatialBiasTable t;
    t.key = group_of(group.front());
    t.trials = group.size();
    for (const auto& s : group) {
        auto& truth = t.cells[static_cast<std::size_t>(cell_index(s.entry.ground_truth_cell))];
        ++truth.truth_count;
        if (!s.score.picked_cell) {
            ++t.invalid;
            continue;
        }
        auto& pick = t.cells[static_cast<std::size_t>(cell_index(*s.score.picked_cell))];
        ++pick.picks;
        if (*s.score.picked_cell == s.entry.ground_truth_cell) ++pick.correct_picks;
    }
    const double n = static_cast<double>(t.trials);
    for (auto& c : t.cells) {
        if (c.picks) c.precision = static_cast<double>(c.correct_picks) / static_cast<double>(c.picks);
        if (c.truth_count) c.recall = static_cast<double>(c.correct_picks) / static_cast<double>(c.truth_count);
        c.selection_pct = 100.0 * static_cast<double>(c.picks) / n;
    }
    t.invalid_pct = 100.0 * static_cast<double>(t.invalid) / n;
    return t;
}

std::vector<SpatialBiasTable> spatial_bias_tables(std::span<const JoinedScore> scores) {
    return per_group<SpatialBiasTable>(scores, Mode::Cells, [](const auto& g) { return spatial_bias_table(g); });
}

std::string Bin::label() const { return std::to_string(lo) + "-" + std::to_string(hi); }

std::vector<Bin> human_bins(Family f) {
    switch (f) {
    case Family::CircleSizes: {
        std::vector<Bin> b;
        for (int lo = 1; lo <= 41; lo += 4) b.push_back({lo, lo + 3});
        b.push_back({45, 49});
        return b;
    }
    case Family::TwoAmongFive:
    case Family::TAmongL: return {{1, 4}, {5, 8}, {9, 16}, {17, 32}, {33, 64}, {65, 99}};
    case Family::LightPriors: return {{2, 5}, {6, 9}, {10, 13}, {14, 17}};
    }
    return {};
}

std::vector<Bin> finetune_bins() {
    std::vector<Bin> b;
    for (int lo = 0; lo < 100; lo += 10) b.push_back({lo, lo + 9});
    return b;
}

BinnedTable bin_results(std::span<const JoinedScore> group, std::span<const Bin> bins) {
    require_nonempty(group, "bin_results");
    require_mode(group, Mode::Cells, "bin_results");
    if (bins.empty()) throw std::invalid_argument("bin_results: no bins");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].lo > bins[i].hi) throw std::invalid_argument("bin_results: empty bin " + bins[i].label());
        if (i && bins[i].lo <= bins[i - 1].hi)
            throw std::invalid_argument("bin_results: bins must be strictly increasing");
    }
    BinnedTable t;
    t.key = group_of(group.front());
    for (const auto& b : bins) t.rows.push_back({b, 0, 0, 0.0});
    for (const auto& s : group) {
        const int n = s.entry.n_distractors;
        auto it = std::find_if(t.rows.begin(), t.rows.end(),
                               [n](const BinRow& r) { return n >= r.bin.lo && n <= r.bin.hi; });
        if (it == t.rows.end())
            throw UncoveredValue("distractor count " + std::to_string(n) + " falls in no bin");
        ++it->trials;
        it->successes += s.score.correct.value_or(false);
    }
    for (auto& r : t.rows)
        r.mean = r.trials ? static_cast<double>(r.successes) / static_cast<double>(r.trials) : 0.0;
    return t;
}

} // namespace vsearch
