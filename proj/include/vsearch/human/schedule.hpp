#pragma once

#include "vsearch/analysis.hpp"
#include "vsearch/manifest.hpp"
#include "vsearch/stimgen.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsearch::human {

struct PoolTooSmall : std::runtime_error {
    explicit PoolTooSmall(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kFixationMs = 500;
inline constexpr int kPracticeTrials = 8;
inline constexpr double kExclusionLow = 170.0;
inline constexpr double kExclusionHigh = 230.0;

/// Stimulus duration per family: 3000 ms for the digit families, 1500 ms otherwise.
int stimulus_ms(Family f);

/// True when either coordinate lies in [170, 230] (close to a cell border).
bool in_exclusion_band(Point p);

/// One (task, bin) cell of a family's factorial design.
struct Stratum {
    TaskCondition task;
    Bin bin;
    int bin_index = 0;
    int trials = 0; // per session; a multiple of 4
};

/// Families with a human protocol: CircleSizes (144 trials), TwoAmongFive
/// (144), LightPriors (192).
std::vector<Stratum> design_strata(Family f);
int design_trial_count(Family f);

/// Colour assignment of one stimulus; unset for achromatic families.
struct ColourCombo {
    std::optional<PaletteColour> target;
    std::optional<PaletteColour> distractor;
};

/// Combinations rotated through within a condition: one per palette colour
/// when all objects share a colour, one per ordered pair of distinct colours
/// otherwise, a single empty combination for LightPriors.
std::vector<ColourCombo> colour_combos(const TaskCondition& task);

struct Candidate {
    Scene scene;
    ManifestEntry entry;
    int stratum = 0;
    int cell = 0; // cell_index of the ground truth
    int combo = 0;
};

/// Candidate stimuli with the exclusion filter already applied.
struct StimulusPool {
    Family family = Family::CircleSizes;
    std::uint64_t seed = 0;
    std::vector<Stratum> strata;
    std::vector<Candidate> candidates;
};

/// For every (stratum, cell, colour combination) slot, keeps generating
/// scenes (distractor count uniform in the bin) until the slot holds
/// `per_slot` times the stimuli one session draws from it, all with targets
/// outside the exclusion band.
StimulusPool build_stimulus_pool(Family f, std::uint64_t seed, int per_slot = 4,
                                 const std::string& id_prefix = "pool");

struct ScheduledTrial {
    int index = 0;
    bool practice = false;
    bool feedback = false;
    ManifestEntry entry;
    Scene scene;
    std::string bin;
    int fixation_ms = kFixationMs;
    int stimulus_ms = 0;
    std::string prompt;
};

struct SessionSchedule {
    std::string participant;
    Family family = Family::CircleSizes;
    std::uint64_t seed = 0;
    std::vector<ScheduledTrial> trials; // practice block first
    int practice_count = 0;

    int experimental_count() const { return static_cast<int>(trials.size()) - practice_count; }
};

/// Stratified selection from a pool: per stratum, each ground-truth cell gets
/// trials/4 stimuli; colour combinations rotate round-robin within each
/// condition. Experimental order is shuffled per session; the practice block
/// (8 trials with feedback) comes from the separate practice pool.
SessionSchedule create_session(const StimulusPool& pool, const StimulusPool& practice_pool,
                               const std::string& participant, std::uint64_t session_seed);

/// Builds both pools from master_seed and schedules one participant.
SessionSchedule create_session(Family f, const std::string& participant, std::uint64_t master_seed);

/// Seed of the practice pool derived from a master seed.
std::uint64_t practice_pool_seed(std::uint64_t master_seed);
/// Per-participant selection seed.
std::uint64_t session_seed(std::uint64_t master_seed, const std::string& participant);

} // namespace vsearch::human
