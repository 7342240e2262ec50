#include "vsearch/finetune.hpp"

#include "vsearch/hashing.hpp"
#include "vsearch/prompts.hpp"
#include "vsearch/scoring.hpp"

#include <numeric>
#include <stdexcept>

namespace vsearch {

namespace {

constexpr const char* kSystemMessage =
    "You are a vision assistant. Answer localisation questions about the image exactly in the requested format.";

} // namespace

FinetuneSet build_finetune_dataset(int n_examples, std::uint64_t seed) {
    if (n_examples <= 0) throw std::invalid_argument("n_examples must be positive");

    // Set sizes: a seeded permutation of 0..49, cycled.
    std::vector<int> sizes(kFinetuneMaxDistractors + 1);
    std::iota(sizes.begin(), sizes.end(), 0);
    Rng order(mix64(seed));
    order.shuffle(sizes.begin(), sizes.end());

    const auto count = static_cast<std::size_t>(n_examples);
    std::vector<Scene> scenes(count);
    std::string failure;
    std::size_t failed_at = count;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const int n = sizes[k % sizes.size()];
        const Cell cell = cell_from_index(static_cast<int>(k % 4));
        const Version v = (k / 4) % 2 == 0 ? Version::Original : Version::Reversed;
        try {
            Rng rng(sub_seed(seed, k));
            scenes[k] = gen_two_among_five_scene(rng, Condition::ShapeConjunctive, v, n, {.target_cell = cell});
        } catch (const PlacementExhausted& e) {
#pragma omp critical(vsearch_finetune_failure)
            if (k < failed_at) {
                failed_at = k;
                failure = e.what();
            }
        }
    }
    if (failed_at != count)
        throw PlacementExhausted("finetune example " + std::to_string(failed_at) + ": " + failure);

    FinetuneSet set;
    set.dataset.master_seed = seed;
    set.dataset.family = Family::TwoAmongFive;
    for (std::size_t i = 0; i < count; ++i) {
        auto entry = make_manifest_entry(scenes[i], make_image_id("finetune", i), seed);
        set.examples.push_back({entry.image_id, build_prompt(entry, Mode::Cells), format_cell(entry.ground_truth_cell)});
        set.dataset.manifest.push_back(std::move(entry));
    }
    set.dataset.scenes = std::move(scenes);
    return set;
}

nlohmann::json finetune_line(const FinetuneExample& ex, const std::vector<std::uint8_t>* png) {
    using nlohmann::json;
    const std::string url = png ? "data:image/png;base64," + base64_encode(*png) : ex.image_id + ".png";
    json user_content = json::array();
    user_content.push_back({{"type", "text"}, {"text", ex.user_prompt}});
    user_content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", kSystemMessage}});
    messages.push_back({{"role", "user"}, {"content", user_content}});
    messages.push_back({{"role", "assistant"}, {"content", ex.assistant_answer}});
    return json{{"messages", messages}};
}

void write_finetune_export(const std::filesystem::path& dir, const FinetuneSet& set, bool inline_images) {
    write_dataset(dir, set.dataset);
    std::string lines;
    if (inline_images) {
        for (const auto& ex : set.examples) {
            const auto png = read_file(dir / (ex.image_id + ".png"));
            lines += finetune_line(ex, &png).dump() + "\n";
        }
    } else {
        for (const auto& ex : set.examples) lines += finetune_line(ex, nullptr).dump() + "\n";
    }
    write_text(dir / "train.jsonl", lines);
}

std::vector<DatasetSpec> transfer_eval_specs(int trials_per_cell) {
    const auto sizes = full_set_size_range(Family::TwoAmongFive);
    auto make = [&](Family f, Condition c, std::vector<Version> versions, std::uint64_t seed, std::string prefix) {
        DatasetSpec s;
        s.family = f;
        s.conditions = {c};
        s.versions = std::move(versions);
        s.set_sizes = sizes;
        s.trials_per_cell = trials_per_cell;
        s.master_seed = seed;
        s.id_prefix = std::move(prefix);
        return s;
    };
    return {
        make(Family::TwoAmongFive, Condition::ShapeConjunctive, {}, 1745332147ULL, "eval_sc_2among5"),
        make(Family::TAmongL, Condition::ShapeConjunctive, {Version::Original}, 1745566567ULL, "eval_sc_t_among_l"),
        make(Family::TAmongL, Condition::Disjunctive, {Version::Original}, 1746005099ULL, "eval_disj_t_among_l"),
        make(Family::TwoAmongFive, Condition::ShapeColourConjunctive, {}, 1746104336ULL, "eval_scc_2among5"),
    };
}

std::vector<TransferEval> build_transfer_evals(int trials_per_cell) {
    std::vector<TransferEval> out;
    for (auto& spec : transfer_eval_specs(trials_per_cell)) {
        auto ds = build_dataset(spec);
        out.push_back({spec.id_prefix, spec, std::move(ds)});
    }
    return out;
}

} // namespace vsearch
