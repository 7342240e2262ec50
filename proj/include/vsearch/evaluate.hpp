#pragma once

#include "vsearch/runner.hpp"
#include "vsearch/scoring.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vsearch {

/// Manifest entries by image_id.
using ManifestIndex = std::unordered_map<std::string, ManifestEntry>;

ManifestIndex index_manifest(std::span<const ManifestEntry> entries);

/// Parses and scores one trial. Transport-error trials score as unparseable
/// with the transport_error flag set.
ScoreRecord score_trial(const TrialRecord& trial, const ManifestEntry& entry);

/// Scores every trial; throws std::out_of_range for trials missing from the index.
std::vector<ScoreRecord> score_trials(std::span<const TrialRecord> trials, const ManifestIndex& index);
/// Single-threaded reference for score_trials.
std::vector<ScoreRecord> score_trials_serial(std::span<const TrialRecord> trials,
                                             const ManifestIndex& index);

template <typename T>
std::string to_jsonl(std::span<const T> records) {
    std::string out;
    for (const auto& r : records) out += to_json(r).dump() + '\n';
    return out;
}

std::vector<TrialRecord> read_trials_jsonl(const std::filesystem::path& file);
std::vector<ScoreRecord> read_scores_jsonl(const std::filesystem::path& file);

} // namespace vsearch
