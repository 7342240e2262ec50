#pragma once

#include "vsearch/manifest.hpp"
#include "vsearch/placement.hpp"
#include "vsearch/rng.hpp"
#include "vsearch/scene.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vsearch {

/// Optional constraints for a single scene. Unset fields are sampled.
struct SceneOptions {
    /// Forces the target centre into this grid cell.
    std::optional<Cell> target_cell;
    std::optional<PaletteColour> target_colour;
    /// Ignored where the family uses a single colour for every object.
    std::optional<PaletteColour> distractor_colour;
};

Scene gen_circle_scene(Rng& rng, Condition condition, int n_distractors,
                       const SceneOptions& opts = {});

Scene gen_two_among_five_scene(Rng& rng, Condition condition, Version version,
                               int n_distractors, const SceneOptions& opts = {});

Scene gen_t_among_l_scene(Rng& rng, Condition condition, Version version, int n_distractors,
                          const SceneOptions& opts = {});

Scene gen_light_prior_scene(Rng& rng, Condition direction, int n_distractors,
                            const SceneOptions& opts = {});

/// Dispatches on task.family.
Scene gen_scene(Rng& rng, const TaskCondition& task, int n_distractors,
                const SceneOptions& opts = {});

/// Half-open quadrants: x < 200 is column 1, y < 200 is row 1.
Cell ground_truth_cell(Point target_centre);

/// Box of canvas coordinates belonging to a cell.
Rect cell_rect(Cell c);

struct DatasetSpec {
    Family family = Family::CircleSizes;
    std::vector<Condition> conditions;
    /// Ignored for families without versions; empty means both versions.
    std::vector<Version> versions;
    std::vector<int> set_sizes; // distractor counts
    int trials_per_cell = 1;
    std::uint64_t master_seed = 42;
    std::string id_prefix; // defaults to the family name
};

struct Dataset {
    std::uint64_t master_seed = 0;
    Family family = Family::CircleSizes;
    std::vector<Scene> scenes;
    std::vector<ManifestEntry> manifest;
};

/// One design cell of a dataset, in enumeration order.
struct DesignPoint {
    TaskCondition task;
    int n_distractors = 0;
};

/// Enumerates condition x version x set size x trial, in that nesting order.
std::vector<DesignPoint> enumerate_design(const DatasetSpec& spec);

/// Scene i is generated from sub_seed(master_seed, i). Parallel over scenes.
Dataset build_dataset(const DatasetSpec& spec);
/// Single-threaded reference; produces the same dataset as build_dataset.
Dataset build_dataset_serial(const DatasetSpec& spec);

/// All conditions belonging to a family, in declaration order.
std::vector<Condition> family_conditions(Family f);
std::vector<int> full_set_size_range(Family f);

ManifestEntry make_manifest_entry(const Scene& scene, std::string image_id,
                                  std::uint64_t master_seed);

std::string make_image_id(std::string_view prefix, std::size_t index);

} // namespace vsearch
