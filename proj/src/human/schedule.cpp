#include "vsearch/human/schedule.hpp"

#include "vsearch/prompts.hpp"

#include <algorithm>
#include <map>

namespace vsearch::human {

namespace {

constexpr PaletteColour kColours[] = {PaletteColour::Red, PaletteColour::Green, PaletteColour::Blue};

std::vector<TaskCondition> family_tasks(Family f) {
    std::vector<TaskCondition> out;
    switch (f) {
    case Family::CircleSizes:
        for (Condition c : {Condition::Small, Condition::Medium, Condition::Large}) out.push_back({f, c, {}});
        break;
    case Family::TwoAmongFive:
        for (Condition c : {Condition::Disjunctive, Condition::ShapeConjunctive, Condition::ShapeColourConjunctive})
            for (Version v : {Version::Original, Version::Reversed}) out.push_back({f, c, v});
        break;
    case Family::LightPriors:
        for (Condition c : {Condition::Top, Condition::Bottom, Condition::Left, Condition::Right})
            out.push_back({f, c, {}});
        break;
    case Family::TAmongL: throw std::invalid_argument("no human protocol for TAmongL");
    }
    return out;
}

int trials_per_bin(Family f) { return f == Family::LightPriors ? 12 : 4; }

std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

} // namespace

int stimulus_ms(Family f) {
    return f == Family::TwoAmongFive || f == Family::TAmongL ? 3000 : 1500;
}

bool in_exclusion_band(Point p) {
    auto in = [](double v) { return v >= kExclusionLow && v <= kExclusionHigh; };
    return in(p.x) || in(p.y);
}

std::vector<Stratum> design_strata(Family f) {
    std::vector<Stratum> out;
    const auto bins = human_bins(f);
    for (const auto& task : family_tasks(f))
        for (std::size_t b = 0; b < bins.size(); ++b)
            out.push_back({task, bins[b], static_cast<int>(b), trials_per_bin(f)});
    return out;
}

int design_trial_count(Family f) {
    int total = 0;
    for (const auto& s : design_strata(f)) total += s.trials;
    return total;
}

std::vector<ColourCombo> colour_combos(const TaskCondition& task) {
    std::vector<ColourCombo> out;
    if (task.family == Family::LightPriors) return {ColourCombo{}};
    const bool shared = task.family == Family::CircleSizes || task.condition == Condition::ShapeConjunctive;
    for (PaletteColour a : kColours) {
        if (shared) {
            out.push_back({a, {}});
            continue;
        }
        for (PaletteColour b : kColours)
            if (a != b) out.push_back({a, b});
    }
    return out;
}

StimulusPool build_stimulus_pool(Family f, std::uint64_t seed, int per_slot, const std::string& id_prefix) {
    if (per_slot < 1) throw std::invalid_argument("per_slot must be positive");
    StimulusPool pool;
    pool.family = f;
    pool.seed = seed;
    pool.strata = design_strata(f);

    std::uint64_t draw = 0;
    std::size_t id = 0;
    for (std::size_t s = 0; s < pool.strata.size(); ++s) {
        const auto& st = pool.strata[s];
        const auto combos = colour_combos(st.task);
        const int per_cell = st.trials / 4;
        const int combos_n = static_cast<int>(combos.size());
        const int want = per_slot * ((per_cell + combos_n - 1) / combos_n);
        for (int cell = 0; cell < 4; ++cell) {
            for (std::size_t k = 0; k < combos.size(); ++k) {
                int kept = 0;
                int tries = 0;
                while (kept < want) {
                    if (++tries > 1000 * want)
                        throw PoolTooSmall("cannot fill pool slot for bin " + st.bin.label());
                    Rng rng(sub_seed(seed, draw++));
                    const int n = rng.between(st.bin.lo, st.bin.hi);
                    SceneOptions opts;
                    opts.target_cell = cell_from_index(cell);
                    opts.target_colour = combos[k].target;
                    opts.distractor_colour = combos[k].distractor;
                    Scene scene = gen_scene(rng, st.task, n, opts);
                    if (in_exclusion_band(scene.target().centre)) continue;
                    Candidate c;
                    c.entry = make_manifest_entry(scene, make_image_id(id_prefix, id++), seed);
                    c.scene = std::move(scene);
                    c.stratum = static_cast<int>(s);
                    c.cell = cell;
                    c.combo = static_cast<int>(k);
                    pool.candidates.push_back(std::move(c));
                    ++kept;
                }
            }
        }
    }
    return pool;
}

std::uint64_t practice_pool_seed(std::uint64_t master_seed) { return sub_seed(master_seed, hash_string("practice")); }

std::uint64_t session_seed(std::uint64_t master_seed, const std::string& participant) {
    return sub_seed(master_seed, hash_string(participant));
}

namespace {

ScheduledTrial make_trial(const Candidate& c, const Stratum& st, bool practice) {
    ScheduledTrial t;
    t.practice = practice;
    t.feedback = practice;
    t.entry = c.entry;
    t.scene = c.scene;
    t.bin = st.bin.label();
    t.fixation_ms = kFixationMs;
    t.stimulus_ms = stimulus_ms(c.entry.task_condition.family);
    t.prompt = human_prompt(c.entry);
    return t;
}

std::string task_key(const TaskCondition& t) {
    std::string k = std::string(to_string(t.condition));
    if (t.version) k += "|" + std::string(to_string(*t.version, t.family));
    return k;
}

} // namespace

SessionSchedule create_session(const StimulusPool& pool, const StimulusPool& practice_pool,
                               const std::string& participant, std::uint64_t seed) {
    if (pool.family != practice_pool.family) throw std::invalid_argument("pool families differ");
    Rng rng(seed);

    // slot (stratum, cell, combo) -> candidate indices
    std::map<std::tuple<int, int, int>, std::vector<std::size_t>> slots;
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
        const auto& c = pool.candidates[i];
        slots[{c.stratum, c.cell, c.combo}].push_back(i);
    }

    std::map<std::string, int> rotation;
    std::vector<ScheduledTrial> experimental;
    for (std::size_t s = 0; s < pool.strata.size(); ++s) {
        const auto& st = pool.strata[s];
        const auto n_combos = static_cast<int>(colour_combos(st.task).size());
        int& next_combo = rotation[task_key(st.task)];
        for (int cell = 0; cell < 4; ++cell) {
            for (int r = 0; r < st.trials / 4; ++r) {
                const int combo = next_combo++ % n_combos;
                auto it = slots.find({static_cast<int>(s), cell, combo});
                if (it == slots.end() || it->second.empty())
                    throw PoolTooSmall("stimulus pool exhausted for bin " + st.bin.label());
                auto& avail = it->second;
                const auto pick = rng.below(avail.size());
                const auto& cand = pool.candidates[avail[pick]];
                avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(pick));
                experimental.push_back(make_trial(cand, st, false));
            }
        }
    }
    rng.shuffle(experimental.begin(), experimental.end());

    if (practice_pool.candidates.size() < static_cast<std::size_t>(kPracticeTrials))
        throw PoolTooSmall("practice pool holds fewer than " + std::to_string(kPracticeTrials) + " stimuli");
    std::vector<std::size_t> order(practice_pool.candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order.begin(), order.end());

    SessionSchedule out;
    out.participant = participant;
    out.family = pool.family;
    out.seed = seed;
    for (int i = 0; i < kPracticeTrials; ++i) {
        const auto& c = practice_pool.candidates[order[static_cast<std::size_t>(i)]];
        out.trials.push_back(make_trial(c, practice_pool.strata[static_cast<std::size_t>(c.stratum)], true));
    }
    out.practice_count = kPracticeTrials;
    for (auto& t : experimental) out.trials.push_back(std::move(t));
    for (std::size_t i = 0; i < out.trials.size(); ++i) out.trials[i].index = static_cast<int>(i);
    return out;
}

SessionSchedule create_session(Family f, const std::string& participant, std::uint64_t master_seed) {
    const auto pool = build_stimulus_pool(f, master_seed, 4, "pool");
    const auto practice = build_stimulus_pool(f, practice_pool_seed(master_seed), 1, "practice");
    return create_session(pool, practice, participant, session_seed(master_seed, participant));
}

} // namespace vsearch::human
