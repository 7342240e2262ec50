// Serial reference kernels against their OpenMP counterparts.

#include "vsearch/adapters.hpp"
#include "vsearch/dataset_io.hpp"
#include "vsearch/evaluate.hpp"
#include "vsearch/runner.hpp"
#include "vsearch/stimgen.hpp"

#include <benchmark/benchmark.h>

using namespace vsearch;

namespace {

DatasetSpec spec_for(Family f) {
    DatasetSpec spec;
    spec.family = f;
    spec.conditions = family_conditions(f);
    spec.set_sizes = full_set_size_range(f);
    return spec;
}

const Dataset& two_among_five() {
    static const Dataset ds = build_dataset(spec_for(Family::TwoAmongFive));
    return ds;
}

struct Scored {
    std::vector<TrialRecord> trials;
    ManifestIndex index;
};

const Scored& scored_trials() {
    static const Scored s = [] {
        DatasetSpec spec = spec_for(Family::CircleSizes);
        spec.trials_per_cell = 20;
        const auto ds = build_dataset(spec);
        const auto png = render_dataset(ds);
        std::vector<TrialInput> in;
        for (std::size_t i = 0; i < ds.manifest.size(); ++i) in.push_back({ds.manifest[i], png[i]});
        UniformRandomCellAdapter model(1);
        RunOptions o;
        o.mode = Mode::Coordinates;
        return Scored{run_trials(model, in, o), index_manifest(ds.manifest)};
    }();
    return s;
}

void BM_build_serial(benchmark::State& st) {
    const auto spec = spec_for(Family::TwoAmongFive);
    for (auto _ : st) benchmark::DoNotOptimize(build_dataset_serial(spec));
}

void BM_build_omp(benchmark::State& st) {
    const auto spec = spec_for(Family::TwoAmongFive);
    for (auto _ : st) benchmark::DoNotOptimize(build_dataset(spec));
}

void BM_render_serial(benchmark::State& st) {
    const auto& ds = two_among_five();
    for (auto _ : st) benchmark::DoNotOptimize(render_dataset_serial(ds));
}

void BM_render_omp(benchmark::State& st) {
    const auto& ds = two_among_five();
    for (auto _ : st) benchmark::DoNotOptimize(render_dataset(ds));
}

void BM_score_serial(benchmark::State& st) {
    const auto& s = scored_trials();
    for (auto _ : st) benchmark::DoNotOptimize(score_trials_serial(s.trials, s.index));
}

void BM_score_omp(benchmark::State& st) {
    const auto& s = scored_trials();
    for (auto _ : st) benchmark::DoNotOptimize(score_trials(s.trials, s.index));
}

} // namespace

BENCHMARK(BM_build_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_build_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_render_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_render_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_score_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_score_omp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
