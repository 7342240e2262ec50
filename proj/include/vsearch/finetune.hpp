#pragma once

#include "vsearch/dataset_io.hpp"
#include "vsearch/stimgen.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vsearch {

inline constexpr std::uint64_t kFinetuneTrainSeed = 1745313698ULL;
inline constexpr int kFinetuneMaxDistractors = 49;

struct FinetuneExample {
    std::string image_id;
    std::string user_prompt;      // Cells prompt, Shape Conjunctive template
    std::string assistant_answer; // "Cell (i,j)"
};

struct FinetuneSet {
    Dataset dataset;
    std::vector<FinetuneExample> examples;
};

/// Shape Conjunctive 2-among-5 training examples (both digit directions) with
/// 0..49 distractors. Set sizes and ground-truth cells are balanced to within
/// one example. Example i uses sub_seed(seed, i).
FinetuneSet build_finetune_dataset(int n_examples, std::uint64_t seed = kFinetuneTrainSeed);

/// Chat-format training line: system, user (text + image), assistant.
/// The image is `<image_id>.png` or, with inline_images, a base64 data URL.
nlohmann::json finetune_line(const FinetuneExample& ex, const std::vector<std::uint8_t>* png);

/// Writes images, manifest.json and train.jsonl to dir.
void write_finetune_export(const std::filesystem::path& dir, const FinetuneSet& set, bool inline_images);

struct TransferEval {
    std::string name;
    DatasetSpec spec;
    Dataset dataset;
};

/// The four held-out evaluation sets, 0..99 distractors, with their fixed seeds.
std::vector<DatasetSpec> transfer_eval_specs(int trials_per_cell = 1);
std::vector<TransferEval> build_transfer_evals(int trials_per_cell = 1);

} // namespace vsearch
