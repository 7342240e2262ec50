#include "vsearch/evaluate.hpp"

#include <fstream>
#include <stdexcept>

namespace vsearch {

ManifestIndex index_manifest(std::span<const ManifestEntry> entries) {
    ManifestIndex idx;
    idx.reserve(entries.size());
    for (const auto& e : entries) idx.emplace(e.image_id, e);
    return idx;
}

ScoreRecord score_trial(const TrialRecord& trial, const ManifestEntry& entry) {
    const ParsedAnswer answer = parse_answer(trial.error ? std::string_view{} : trial.response, trial.mode);
    ScoreRecord s = trial.mode == Mode::Cells ? score_cells(answer, entry) : score_coordinates(answer, entry);
    s.model = trial.model;
    s.flags.transport_error = trial.error.has_value();
    return s;
}

namespace {

const ManifestEntry& find_entry(const ManifestIndex& index, const std::string& id) {
    const auto it = index.find(id);
    if (it == index.end()) throw std::out_of_range("trial " + id + " has no manifest entry");
    return it->second;
}

} // namespace

std::vector<ScoreRecord> score_trials_serial(std::span<const TrialRecord> trials, const ManifestIndex& index) {
    std::vector<ScoreRecord> out;
    out.reserve(trials.size());
    for (const auto& t : trials) out.push_back(score_trial(t, find_entry(index, t.image_id)));
    return out;
}

std::vector<ScoreRecord> score_trials(std::span<const TrialRecord> trials, const ManifestIndex& index) {
    // Resolve lookups first so a missing entry throws outside the parallel region.
    std::vector<const ManifestEntry*> entries;
    entries.reserve(trials.size());
    for (const auto& t : trials) entries.push_back(&find_entry(index, t.image_id));

    std::vector<ScoreRecord> out(trials.size());
    const auto count = static_cast<std::ptrdiff_t>(trials.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = score_trial(trials[k], *entries[k]);
    }
    return out;
}

namespace {

template <typename T, typename F>
std::vector<T> read_jsonl(const std::filesystem::path& file, F from_json) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::vector<T> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(from_json(nlohmann::json::parse(line)));
    return out;
}

} // namespace

std::vector<TrialRecord> read_trials_jsonl(const std::filesystem::path& file) {
    return read_jsonl<TrialRecord>(file, trial_record_from_json);
}

std::vector<ScoreRecord> read_scores_jsonl(const std::filesystem::path& file) {
    return read_jsonl<ScoreRecord>(file, score_record_from_json);
}

} // namespace vsearch
