#pragma once

#include "vsearch/common.hpp"
#include "vsearch/scene.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vsearch {

inline constexpr int kManifestSchemaVersion = 1;

struct ManifestEntry {
    std::string image_id;
    TaskCondition task_condition;
    int n_distractors = 0;
    std::uint64_t master_seed = 0;
    Point target_centre;
    Cell ground_truth_cell;
    std::optional<PaletteColour> target_colour;
    std::optional<PaletteColour> distractor_colour;
    std::optional<Glyph> target_digit;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

nlohmann::json to_json(const TaskCondition& t);
TaskCondition task_condition_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ManifestEntry& e);
ManifestEntry manifest_entry_from_json(const nlohmann::json& j);

struct Manifest {
    int schema_version = kManifestSchemaVersion;
    std::uint64_t master_seed = 0;
    std::vector<ManifestEntry> entries;
};

nlohmann::json to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);

/// Serialised text of a manifest (stable key order, 2-space indent).
std::string dump_manifest(const Manifest& m);

} // namespace vsearch
