// Acceptance gate: one PASS/FAIL line per criterion, with wall time against its budget.

#include "oracles.hpp"

#include "vsearch/adapters.hpp"
#include "vsearch/analysis.hpp"
#include "vsearch/dataset_io.hpp"
#include "vsearch/evaluate.hpp"
#include "vsearch/finetune.hpp"
#include "vsearch/hashing.hpp"
#include "vsearch/human/schedule.hpp"
#include "vsearch/runner.hpp"
#include "vsearch/stats.hpp"
#include "vsearch/stimgen.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace vsearch;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs,
                budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
}

std::vector<TrialInput> as_inputs(const Dataset& ds) {
    const auto png = render_dataset(ds);
    std::vector<TrialInput> out;
    for (std::size_t i = 0; i < ds.manifest.size(); ++i) out.push_back({ds.manifest[i], png[i]});
    return out;
}

std::vector<JoinedScore> run_and_score(ModelAdapter& model, std::span<const TrialInput> inputs, Mode mode) {
    RunOptions o;
    o.mode = mode;
    o.parallel = 8;
    const auto trials = run_trials(model, inputs, o);
    std::vector<ManifestEntry> entries;
    for (const auto& in : inputs) entries.push_back(in.entry);
    const auto index = index_manifest(entries);
    auto scores = score_trials(trials, index);
    for (auto& s : scores) s.model = model.id();
    return join_scores(scores, index);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome refusal_score() {
    ManifestEntry e;
    e.image_id = "x";
    e.target_centre = {123, 321};
    RefuserAdapter r;
    TrialRecord t;
    t.image_id = "x";
    t.mode = Mode::Coordinates;
    const std::vector<std::uint8_t> img{0};
    t.response = r.send(img, "What are the coordinates?", 0.0);
    const auto s = score_trial(t, e);
    const double err = s.error_px.value_or(-1);
    return {s.flags.refusal && std::abs(err - 565.6854) <= 0.001, "error_px = " + fmt("%.6f", err)};
}

Outcome oracle_end_to_end() {
    DatasetSpec spec;
    spec.family = Family::CircleSizes;
    spec.conditions = family_conditions(Family::CircleSizes);
    spec.set_sizes = full_set_size_range(Family::CircleSizes);
    spec.master_seed = 42;
    const auto dir = oracle::temp_dir("accept-oracle");
    write_dataset(dir, build_dataset(spec));
    const auto inputs = load_trial_inputs(read_dataset_dir(dir));
    std::filesystem::remove_all(dir);
    auto mocks = mock_adapters(inputs);

    const auto cells = run_and_score(*mocks.at("oracle"), inputs, Mode::Cells);
    const auto coords = run_and_score(*mocks.at("oracle"), inputs, Mode::Coordinates);
    double worst_acc = 1.0, worst_err = 0.0, mean_err = 0.0;
    std::size_t points = 0;
    for (const auto& c : accuracy_curves(cells))
        for (const auto& p : c.points) {
            worst_acc = std::min(worst_acc, p.mean);
            ++points;
        }
    double sum = 0.0;
    for (const auto& c : error_curves(coords)) {
        for (const auto& p : c.points) worst_err = std::max(worst_err, p.mean);
        sum += c.overall.mean * static_cast<double>(c.overall.trials);
    }
    mean_err = sum / static_cast<double>(coords.size());
    const bool ok = inputs.size() == 150 && points == 150 && worst_acc == 1.0 && worst_err == 0.0 && mean_err == 0.0;
    return {ok, std::to_string(inputs.size()) + " trials, min accuracy " + fmt("%.3f", worst_acc) + ", mean error " +
                    fmt("%.3f", mean_err) + " px"};
}

Outcome uniform_random_accuracy() {
    DatasetSpec spec;
    spec.family = Family::CircleSizes;
    spec.conditions = family_conditions(Family::CircleSizes);
    spec.set_sizes = full_set_size_range(Family::CircleSizes);
    spec.trials_per_cell = 67;
    const auto inputs = as_inputs(build_dataset(spec));
    UniformRandomCellAdapter model(42);
    const auto scored = run_and_score(model, inputs, Mode::Cells);
    std::size_t correct = 0;
    for (const auto& s : scored) correct += s.score.correct.value_or(false);
    const double acc = static_cast<double>(correct) / static_cast<double>(scored.size());
    return {scored.size() >= 10000 && acc >= 0.23 && acc <= 0.27,
            std::to_string(scored.size()) + " trials, accuracy " + fmt("%.4f", acc)};
}

Outcome scene_invariants() {
    std::ostringstream detail;
    bool ok = true;
    for (Family f : {Family::CircleSizes, Family::TwoAmongFive, Family::TAmongL, Family::LightPriors}) {
        const auto conds = family_conditions(f);
        int overlaps = 0, targets_bad = 0, gap_bad = 0, pair_bad = 0;
        double min_gap = 1e9;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            Rng rng(seed);
            TaskCondition task{f, conds[seed % conds.size()], {}};
            if (family_has_version(f)) task.version = (seed / conds.size()) % 2 ? Version::Reversed : Version::Original;
            const int n = static_cast<int>(seed % static_cast<std::uint64_t>(max_distractors(f) + 1));
            const auto s = gen_scene(rng, task, n);
            int targets = 0;
            for (const auto& o : s.objects) targets += o.is_target;
            targets_bad += targets != 1;
            const double gap = f == Family::LightPriors ? geometry::kSphereGap : 0.0;
            for (std::size_t i = 0; i < s.objects.size(); ++i)
                for (std::size_t j = 0; j < i; ++j) {
                    const auto& a = s.objects[i];
                    const auto& b = s.objects[j];
                    const double edge = std::hypot(a.centre.x - b.centre.x, a.centre.y - b.centre.y) - a.radius - b.radius;
                    overlaps += edge < -1e-9;
                    if (f == Family::LightPriors) {
                        min_gap = std::min(min_gap, edge);
                        gap_bad += edge < gap - 1e-9;
                    }
                }
            if (task.condition == Condition::ShapeColourConjunctive) {
                const auto& t = s.target();
                int same = 0;
                for (const auto& o : s.objects) same += o.glyph == t.glyph && o.palette == t.palette;
                pair_bad += same != 1;
            }
        }
        ok &= overlaps == 0 && targets_bad == 0 && gap_bad == 0 && pair_bad == 0;
        detail << to_string(f) << ": overlaps " << overlaps << ", target count errors " << targets_bad;
        if (f == Family::LightPriors) detail << ", min edge gap " << fmt("%.2f", min_gap);
        if (f == Family::TwoAmongFive || f == Family::TAmongL) detail << ", non-unique pairs " << pair_bad;
        detail << "; ";
    }
    return {ok, detail.str()};
}

struct Digest {
    std::string manifest;
    std::vector<std::string> images;
    bool operator==(const Digest&) const = default;
};

Digest digest_all(std::uint64_t seed) {
    Digest d;
    for (Family f : {Family::CircleSizes, Family::TwoAmongFive, Family::TAmongL, Family::LightPriors}) {
        DatasetSpec spec;
        spec.family = f;
        spec.conditions = family_conditions(f);
        spec.set_sizes = full_set_size_range(f);
        spec.master_seed = seed;
        const auto ds = build_dataset(spec);
        d.manifest += sha256_hex(dump_manifest(to_manifest(ds)));
        for (const auto& png : render_dataset(ds)) d.images.push_back(sha256_hex(png));
    }
    return d;
}

Outcome determinism() {
    const auto a = digest_all(42), b = digest_all(42);
    return {a == b && !a.images.empty(), std::to_string(a.images.size()) + " images, manifests " +
                                             (a.manifest == b.manifest ? "identical" : "differ") + ", PNG hashes " +
                                             (a.images == b.images ? "identical" : "differ")};
}

Outcome statistics() {
    Rng rng(2024);
    double worst = 0.0;
    for (int d = 0; d < 100; ++d) {
        const auto n = 3 + rng.below(1000);
        std::vector<double> x(n), y(n);
        const double slope = rng.uniform(-3, 3);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform(0, 100);
            y[i] = slope * x[i] + rng.uniform(-50, 50);
        }
        worst = std::max(worst, std::abs(pearson(x, y).r - oracle::pearson_two_pass(x, y)));
    }
    bool ok = worst <= 1e-9;
    std::ostringstream detail;
    detail << "max |r - naive| " << worst << "; coverage";
    for (double p : {0.1, 0.25, 0.5}) {
        int covered = 0;
        for (int s = 0; s < 10000; ++s) {
            std::uint64_t k = 0;
            for (int i = 0; i < 100; ++i) k += rng.uniform01() < p;
            const auto w = wilson_interval(k, 100);
            covered += w.low <= p && p <= w.high;
        }
        const double cov = covered / 10000.0;
        ok &= cov >= 0.93 && cov <= 0.97;
        detail << " p=" << p << ":" << fmt("%.4f", cov);
    }
    bool bonf = true;
    for (int i = 0; i <= 1000; ++i)
        for (std::size_t k = 1; k <= 50; ++k) {
            const double p = i / 1000.0;
            bonf &= bonferroni(p, k) == std::min(1.0, static_cast<double>(k) * p);
        }
    ok &= bonf;
    detail << "; bonferroni " << (bonf ? "exact" : "mismatch");
    return {ok, detail.str()};
}

Outcome always_bottom_right() {
    Dataset ds;
    ds.master_seed = 42;
    ds.family = Family::CircleSizes;
    const auto conds = family_conditions(Family::CircleSizes);
    for (std::size_t i = 0; i < 1000; ++i) {
        Rng rng(sub_seed(42, i));
        SceneOptions o;
        o.target_cell = cell_from_index(static_cast<int>(i % 4));
        auto s = gen_scene(rng, {Family::CircleSizes, conds[(i / 4) % 3], {}}, static_cast<int>(i % 50), o);
        ds.manifest.push_back(make_manifest_entry(s, make_image_id("bias", i), 42));
        ds.scenes.push_back(std::move(s));
    }
    const auto inputs = as_inputs(ds);
    FixedCellAdapter model(Cell{2, 2});
    auto scored = run_and_score(model, inputs, Mode::Cells);
    for (auto& s : scored) s.entry.task_condition.condition = Condition::Large; // one table over all trials
    const auto t = spatial_bias_table(scored);
    const auto& c = t.cells[3];
    double total = t.invalid_pct;
    for (const auto& cell : t.cells) total += cell.selection_pct;
    const bool ok = t.trials == 1000 && c.selection_pct == 100.0 && c.precision &&
                    std::abs(*c.precision - 0.25) <= 0.03 && c.recall == 1.0 && std::abs(total - 100.0) <= 0.1;
    return {ok, "Sel(2,2) " + fmt("%.1f", c.selection_pct) + "%, precision " + fmt("%.3f", c.precision.value_or(-1)) +
                    ", recall " + fmt("%.3f", c.recall.value_or(-1)) + ", sum " + fmt("%.2f", total)};
}

Outcome finetune_exports() {
    bool ok = true;
    std::ostringstream detail;
    const auto dir = oracle::temp_dir("accept-ft");
    for (int n : {10, 100, 1000}) {
        const auto a = build_finetune_dataset(n);
        const auto b = build_finetune_dataset(n);
        std::array<int, 4> cells{};
        int max_n = 0;
        for (const auto& e : a.dataset.manifest) {
            max_n = std::max(max_n, e.n_distractors);
            ++cells[static_cast<std::size_t>(cell_index(e.ground_truth_cell))];
        }
        const auto [lo, hi] = std::minmax_element(cells.begin(), cells.end());
        const bool same = a.dataset.manifest == b.dataset.manifest && render_dataset(a.dataset) == render_dataset(b.dataset);
        write_finetune_export(dir / std::to_string(n), a, false);
        const bool written = std::filesystem::exists(dir / std::to_string(n) / "train.jsonl");
        ok &= static_cast<int>(a.examples.size()) == n && max_n <= 49 && *hi - *lo <= 1 && same && written;
        detail << "n=" << n << ": max distractors " << max_n << ", cell spread " << (*hi - *lo)
               << (same ? ", deterministic" : ", NOT deterministic") << "; ";
    }
    std::filesystem::remove_all(dir);
    for (const auto& ev : build_transfer_evals()) {
        int max_n = 0;
        for (const auto& e : ev.dataset.manifest) max_n = std::max(max_n, e.n_distractors);
        ok &= max_n == 99;
        detail << ev.name << " max n " << max_n << "; ";
    }
    return {ok, detail.str()};
}

Outcome human_schedules() {
    bool ok = true;
    std::ostringstream detail;
    const std::map<Family, int> expected{{Family::CircleSizes, 144}, {Family::TwoAmongFive, 144}, {Family::LightPriors, 192}};
    for (const auto& [f, count] : expected) {
        const auto s = human::create_session(f, "acceptance", 42);
        std::map<std::string, std::array<int, 4>> bins;
        int band = 0, timing = 0;
        for (const auto& t : s.trials) {
            band += human::in_exclusion_band(t.entry.target_centre);
            timing += t.fixation_ms != 500 || t.stimulus_ms != (f == Family::TwoAmongFive ? 3000 : 1500);
            if (t.practice) continue;
            const auto& task = t.entry.task_condition;
            const auto key = std::string(to_string(task.condition)) + (task.version ? std::string(to_string(*task.version, f)) : std::string()) + t.bin;
            ++bins[key][static_cast<std::size_t>(cell_index(t.entry.ground_truth_cell))];
        }
        bool balanced = true;
        for (const auto& [k, cells] : bins) balanced &= cells[0] == cells[1] && cells[1] == cells[2] && cells[2] == cells[3];
        ok &= s.experimental_count() == count && balanced && band == 0 && timing == 0;
        detail << to_string(f) << " " << s.experimental_count() << " trials" << (balanced ? ", balanced" : ", UNBALANCED")
               << ", band hits " << band << ", timing errors " << timing << "; ";
    }
    return {ok, detail.str()};
}

} // namespace

int main() {
    criterion(1, "refusal scores the maximum error", 1, refusal_score);
    criterion(2, "oracle end-to-end on CircleSizes", 120, oracle_end_to_end);
    criterion(3, "uniform random cell accuracy near chance", 300, uniform_random_accuracy);
    criterion(4, "scene invariants over 1000 seeds per family", 300, scene_invariants);
    criterion(5, "dataset determinism at seed 42", 120, determinism);
    criterion(6, "statistics against references", 60, statistics);
    criterion(7, "spatial bias of an always-(2,2) model", 60, always_bottom_right);
    criterion(8, "fine-tune exports and transfer sets", 180, finetune_exports);
    criterion(9, "human schedules", 120, human_schedules);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
