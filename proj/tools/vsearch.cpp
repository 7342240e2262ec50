#include "vsearch/adapters.hpp"
#include "vsearch/analysis.hpp"
#include "vsearch/dataset_io.hpp"
#include "vsearch/evaluate.hpp"
#include "vsearch/finetune.hpp"
#include "vsearch/human/server.hpp"
#include "vsearch/report.hpp"
#include "vsearch/runner.hpp"
#include "vsearch/stimgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace vsearch;

namespace {

// "0..49", "1,5,9" or a mix such as "0..4,10".
std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(part));
            continue;
        }
        const int lo = std::stoi(part.substr(0, dots)), hi = std::stoi(part.substr(dots + 2));
        for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
    return out;
}

std::unique_ptr<ModelAdapter> make_model(const std::string& spec, std::span<const TrialInput> inputs, std::uint64_t seed) {
    if (spec.rfind("mock:", 0) == 0) {
        const auto name = spec.substr(5);
        if (name.rfind("fixed_cell", 0) == 0) {
            const auto idx = name.size() > 10 ? std::stoi(name.substr(11)) : 3;
            return std::make_unique<FixedCellAdapter>(cell_from_index(idx));
        }
        auto mocks = mock_adapters(inputs, seed);
        auto it = mocks.find(name);
        if (it == mocks.end()) throw ConfigError("unknown mock '" + name + "'");
        return std::move(it->second);
    }
    std::ifstream in(spec);
    if (!in) throw ConfigError("cannot read model config " + spec);
    return std::make_unique<HttpChatAdapter>(adapter_config_from_json(nlohmann::json::parse(in)));
}

ManifestIndex load_index(const std::vector<std::string>& manifests) {
    std::vector<ManifestEntry> all;
    for (const auto& m : manifests) {
        const auto man = read_manifest(m);
        all.insert(all.end(), man.entries.begin(), man.entries.end());
    }
    return index_manifest(all);
}

human::TrialsServer* g_server = nullptr;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visual search stimulus generation, model evaluation and analysis"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a stimulus dataset (manifest.json + PNGs)");
    std::string family = "CircleSizes", sizes, out, id_prefix;
    std::vector<std::string> conditions, versions;
    int trials = 1;
    std::uint64_t seed = 42;
    gen->add_option("--family", family, "CircleSizes | TwoAmongFive | TAmongL | LightPriors")->required();
    gen->add_option("--conditions", conditions, "Conditions (default: all of the family)");
    gen->add_option("--versions", versions, "Versions for digit/letter families (default: both)");
    gen->add_option("--sizes", sizes, "Distractor counts, e.g. 0..49 or 1,5,9 (default: full range)");
    gen->add_option("--trials", trials, "Trials per design cell")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Master seed");
    gen->add_option("--prefix", id_prefix, "Image id prefix (default: family name)");
    gen->add_option("--out", out, "Output directory")->required();

    // run
    auto* run = app.add_subcommand("run", "Query a model on a dataset");
    std::string dataset, mode = "cells", model, cache, trials_out;
    int parallel = 1;
    double temperature = 0.0;
    run->add_option("--dataset", dataset, "Dataset directory")->required()->check(CLI::ExistingDirectory);
    run->add_option("--mode", mode, "cells | coordinates")->check(CLI::IsMember({"cells", "coordinates"}));
    run->add_option("--model", model, "Model config JSON, or mock:<oracle|uniform_random_cell|fixed_centre|refuser|out_of_range|fixed_cell:K>")
        ->required();
    run->add_option("--parallel", parallel, "Requests in flight")->check(CLI::PositiveNumber);
    run->add_option("--temperature", temperature, "Sampling temperature");
    run->add_option("--cache", cache, "Response cache file (JSON lines)");
    run->add_option("--seed", seed, "Seed for random mocks");
    run->add_option("--out", trials_out, "Trial records (JSON lines)")->required();

    // score
    auto* score = app.add_subcommand("score", "Parse and score trial records");
    std::vector<std::string> trial_files, manifests;
    std::string scores_out;
    score->add_option("--trials", trial_files, "Trial record files")->required();
    score->add_option("--manifest", manifests, "Manifest files")->required();
    score->add_option("--out", scores_out, "Score records (JSON lines)")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Tables and plots from scores");
    std::vector<std::string> score_files;
    std::string bins = "none";
    analyze->add_option("--scores", score_files, "Score files")->required();
    analyze->add_option("--manifest", manifests, "Manifest files")->required();
    analyze->add_option("--out", out, "Report directory")->required();
    analyze->add_option("--bins", bins, "Binned tables")->check(CLI::IsMember({"none", "human", "finetune"}));

    // finetune-export
    auto* ft = app.add_subcommand("finetune-export", "Write a fine-tuning dataset");
    int n_examples = 1000;
    bool inline_images = false;
    std::uint64_t ft_seed = kFinetuneTrainSeed;
    ft->add_option("--n", n_examples, "Number of examples")->check(CLI::PositiveNumber);
    ft->add_option("--seed", ft_seed, "Seed");
    ft->add_option("--out", out, "Output directory")->required();
    ft->add_flag("--inline-images", inline_images, "Embed images as base64 data URLs");

    // transfer-evals
    auto* tr = app.add_subcommand("transfer-evals", "Write the four held-out evaluation sets");
    tr->add_option("--trials", trials, "Trials per design cell")->check(CLI::PositiveNumber);
    tr->add_option("--out", out, "Output directory (one subdirectory per set)")->required();

    // serve
    auto* serve = app.add_subcommand("serve", "Run the human-baseline trials server");
    std::string host = "127.0.0.1", log_dir, static_dir;
    int port = 8080;
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port");
    serve->add_option("--seed", seed, "Master seed for stimulus pools");
    serve->add_option("--log-dir", log_dir, "Directory for per-session event logs");
    serve->add_option("--static", static_dir, "Directory served at / (browser client)")->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            DatasetSpec spec;
            spec.family = family_from_string(family);
            for (const auto& c : conditions) spec.conditions.push_back(condition_from_string(c));
            if (spec.conditions.empty()) spec.conditions = family_conditions(spec.family);
            for (const auto& v : versions) spec.versions.push_back(version_from_string(v));
            spec.set_sizes = sizes.empty() ? full_set_size_range(spec.family) : parse_sizes(sizes);
            spec.trials_per_cell = trials;
            spec.master_seed = seed;
            spec.id_prefix = id_prefix;
            const auto ds = build_dataset(spec);
            write_dataset(out, ds);
            std::printf("wrote %zu images to %s\n", ds.manifest.size(), out.c_str());
        } else if (*run) {
            const auto inputs = load_trial_inputs(read_dataset_dir(dataset));
            auto adapter = make_model(model, inputs, seed);
            std::optional<ResponseCache> rc;
            if (!cache.empty()) rc.emplace(cache);
            RunOptions opts;
            opts.mode = mode_from_string(mode);
            opts.parallel = parallel;
            opts.temperature = temperature;
            opts.cache = rc ? &*rc : nullptr;
            const auto records = run_trials(*adapter, inputs, opts);
            write_text(trials_out, to_jsonl(std::span<const TrialRecord>(records)));
            std::size_t errors = 0;
            for (const auto& r : records) errors += r.error.has_value();
            std::printf("%zu trials, %zu transport errors\n", records.size(), errors);
        } else if (*score) {
            const auto index = load_index(manifests);
            std::vector<ScoreRecord> all;
            for (const auto& f : trial_files) {
                const auto trials_in = read_trials_jsonl(f);
                const auto scored = score_trials(trials_in, index);
                all.insert(all.end(), scored.begin(), scored.end());
            }
            write_text(scores_out, to_jsonl(std::span<const ScoreRecord>(all)));
            std::printf("%zu scores\n", all.size());
        } else if (*analyze) {
            const auto index = load_index(manifests);
            std::vector<ScoreRecord> all;
            for (const auto& f : score_files) {
                auto s = read_scores_jsonl(f);
                all.insert(all.end(), s.begin(), s.end());
            }
            const auto joined = join_scores(all, index);
            const auto files = emit_report(analyse(joined, bins), out);
            for (const auto& f : files) std::printf("%s\n", f.c_str());
        } else if (*ft) {
            const auto set = build_finetune_dataset(n_examples, ft_seed);
            write_finetune_export(out, set, inline_images);
            std::printf("wrote %zu examples to %s\n", set.examples.size(), out.c_str());
        } else if (*tr) {
            for (const auto& ev : build_transfer_evals(trials)) {
                write_dataset(std::filesystem::path(out) / ev.name, ev.dataset);
                std::printf("%s: %zu images\n", ev.name.c_str(), ev.dataset.manifest.size());
            }
        } else if (*serve) {
            human::SessionStore store(seed, log_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(log_dir));
            human::TrialsServer server(store, static_dir.empty() ? std::nullopt
                                                                 : std::optional<std::filesystem::path>(static_dir));
            if (!server.bind(host, port)) {
                std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
                return 1;
            }
            g_server = &server;
            std::signal(SIGINT, [](int) {
                if (g_server) g_server->stop();
            });
            std::printf("listening on http://%s:%d\n", host.c_str(), port);
            std::fflush(stdout);
            server.listen_after_bind();
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
