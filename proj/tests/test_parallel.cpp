#include "vsearch/adapters.hpp"
#include "vsearch/dataset_io.hpp"
#include "vsearch/evaluate.hpp"
#include "vsearch/runner.hpp"
#include "vsearch/stimgen.hpp"

#include <doctest.h>
#include <omp.h>

using namespace vsearch;

TEST_CASE("parallel generation equals the serial reference") {
    for (Family f : {Family::CircleSizes, Family::TwoAmongFive, Family::TAmongL, Family::LightPriors}) {
        DatasetSpec spec;
        spec.family = f;
        spec.conditions = family_conditions(f);
        spec.set_sizes = {0, 7, 17};
        const auto par = build_dataset(spec);
        const auto ser = build_dataset_serial(spec);
        CHECK(par.manifest == ser.manifest);
        CHECK(render_dataset(par) == render_dataset_serial(ser));
    }
}

TEST_CASE("thread count does not change results") {
    DatasetSpec spec;
    spec.family = Family::TwoAmongFive;
    spec.conditions = {Condition::ShapeColourConjunctive};
    spec.set_sizes = {5, 50, 99};
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = render_dataset(build_dataset(spec));
    omp_set_num_threads(std::max(2, saved));
    const auto many = render_dataset(build_dataset(spec));
    omp_set_num_threads(saved);
    CHECK(one == many);
}

TEST_CASE("parallel scoring equals the serial reference") {
    DatasetSpec spec;
    spec.family = Family::CircleSizes;
    spec.conditions = family_conditions(Family::CircleSizes);
    for (int n = 0; n < 50; n += 3) spec.set_sizes.push_back(n);
    const auto ds = build_dataset(spec);
    const auto png = render_dataset(ds);
    std::vector<TrialInput> in;
    for (std::size_t i = 0; i < ds.manifest.size(); ++i) in.push_back({ds.manifest[i], png[i]});
    auto mocks = mock_adapters(in, 9);
    const auto index = index_manifest(ds.manifest);
    for (Mode m : {Mode::Cells, Mode::Coordinates}) {
        RunOptions o;
        o.mode = m;
        o.parallel = 4;
        const auto trials = run_trials(*mocks.at("uniform_random_cell"), in, o);
        CHECK(score_trials(trials, index) == score_trials_serial(trials, index));
    }
}
