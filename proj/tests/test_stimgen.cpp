#include "oracles.hpp"

#include "vsearch/stimgen.hpp"

#include <doctest.h>

#include <set>

using namespace vsearch;

TEST_CASE("ground truth cell uses half-open quadrants") {
    CHECK(ground_truth_cell({100, 100}) == Cell{1, 1});
    CHECK(ground_truth_cell({300, 100}) == Cell{1, 2});
    CHECK(ground_truth_cell({100, 300}) == Cell{2, 1});
    CHECK(ground_truth_cell({300, 300}) == Cell{2, 2});
    CHECK(ground_truth_cell({199.999, 0}) == Cell{1, 1});
    CHECK(ground_truth_cell({200, 0}) == Cell{1, 2});
    CHECK(ground_truth_cell({0, 200}) == Cell{2, 1});
    CHECK(ground_truth_cell({399.999, 399.999}) == Cell{2, 2});
    CHECK_THROWS_AS(ground_truth_cell({400, 100}), OutOfCanvas);
    CHECK_THROWS_AS(ground_truth_cell({-0.1, 10}), OutOfCanvas);
    CHECK_THROWS_AS(ground_truth_cell({10, 400.5}), OutOfCanvas);
}

TEST_CASE("ground truth agrees with a quadrant oracle") {
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform(0, 400), y = rng.uniform(0, 400);
        CHECK(cell_index(ground_truth_cell({x, y})) == oracle::quadrant(x, y));
    }
}

TEST_CASE("circle scenes") {
    Rng rng(42);
    const auto s = gen_circle_scene(rng, Condition::Large, 10);
    CHECK(s.objects.size() == 11);
    CHECK(s.n_distractors() == 10);
    CHECK(s.objects[0].is_target);
    CHECK(s.objects[0].radius == 30.0);
    const auto colour = s.objects[0].colour;
    for (std::size_t i = 1; i < s.objects.size(); ++i) {
        CHECK_FALSE(s.objects[i].is_target);
        CHECK(s.objects[i].radius == 20.0);
        CHECK(s.objects[i].colour == colour);
    }
    Rng r0(1);
    CHECK(gen_circle_scene(r0, Condition::Small, 0).objects.size() == 1);
    CHECK(gen_circle_scene(r0, Condition::Small, 0).objects[0].radius == 22.5);
    CHECK(gen_circle_scene(r0, Condition::Medium, 0).objects[0].radius == 25.0);
    CHECK_THROWS(gen_circle_scene(r0, Condition::Small, 50));
    CHECK_THROWS(gen_circle_scene(r0, Condition::Small, -1));
    CHECK_THROWS(gen_circle_scene(r0, Condition::Top, 3));
}

TEST_CASE("forced target cell") {
    for (int c = 0; c < 4; ++c) {
        Rng rng(static_cast<std::uint64_t>(c));
        SceneOptions o;
        o.target_cell = cell_from_index(c);
        const auto s = gen_two_among_five_scene(rng, Condition::Disjunctive, Version::Original, 30, o);
        CHECK(ground_truth_cell(s.target().centre) == cell_from_index(c));
    }
}

TEST_CASE("two-among-five colouring by condition") {
    Rng rng(5);
    SceneOptions o;
    o.target_colour = PaletteColour::Red;
    o.distractor_colour = PaletteColour::Blue;

    auto s = gen_two_among_five_scene(rng, Condition::Disjunctive, Version::Original, 20, o);
    CHECK(s.objects[0].glyph == Glyph::Two);
    CHECK(s.objects[0].palette == PaletteColour::Red);
    for (std::size_t i = 1; i < s.objects.size(); ++i) {
        CHECK(s.objects[i].glyph == Glyph::Five);
        CHECK(s.objects[i].palette == PaletteColour::Blue);
    }

    s = gen_two_among_five_scene(rng, Condition::ShapeConjunctive, Version::Reversed, 20, o);
    CHECK(s.objects[0].glyph == Glyph::Five);
    for (const auto& obj : s.objects) CHECK(obj.palette == PaletteColour::Red);

    s = gen_two_among_five_scene(rng, Condition::ShapeColourConjunctive, Version::Original, 20, o);
    int matches = 0;
    for (const auto& obj : s.objects)
        if (obj.glyph == Glyph::Two && obj.palette == PaletteColour::Red) ++matches;
    CHECK(matches == 1);
    std::set<std::pair<int, int>> kinds;
    for (std::size_t i = 1; i < s.objects.size(); ++i)
        kinds.insert({static_cast<int>(*s.objects[i].glyph), static_cast<int>(*s.objects[i].palette)});
    CHECK(kinds == std::set<std::pair<int, int>>{{static_cast<int>(Glyph::Five), static_cast<int>(PaletteColour::Red)},
                                                 {static_cast<int>(Glyph::Two), static_cast<int>(PaletteColour::Blue)}});

    o.distractor_colour = PaletteColour::Red;
    CHECK_THROWS(gen_two_among_five_scene(rng, Condition::Disjunctive, Version::Original, 5, o));
}

TEST_CASE("t-among-l uses letter glyphs") {
    Rng rng(9);
    const auto s = gen_t_among_l_scene(rng, Condition::ShapeConjunctive, Version::Original, 40);
    CHECK(s.objects[0].glyph == Glyph::T);
    for (std::size_t i = 1; i < s.objects.size(); ++i) CHECK(s.objects[i].glyph == Glyph::L);
    const auto r = gen_t_among_l_scene(rng, Condition::Disjunctive, Version::Reversed, 40);
    CHECK(r.objects[0].glyph == Glyph::L);
}

TEST_CASE("light prior scenes") {
    for (Condition dir : {Condition::Top, Condition::Bottom, Condition::Left, Condition::Right}) {
        Rng rng(static_cast<std::uint64_t>(dir));
        const auto s = gen_light_prior_scene(rng, dir, 17);
        CHECK(s.objects.size() == 18);
        CHECK(s.objects[0].lit_from == dir);
        for (std::size_t i = 1; i < s.objects.size(); ++i) CHECK(s.objects[i].lit_from == opposite(dir));
        for (std::size_t i = 0; i < s.objects.size(); ++i) {
            CHECK(std::hypot(s.objects[i].centre.x - 200, s.objects[i].centre.y - 200) + 20 <= 190 + 1e-9);
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(oracle::discs_overlap(s.objects[i], s.objects[j], 20.0));
        }
    }
    Rng rng(0);
    const auto b = gen_light_prior_scene(rng, Condition::Bottom, 4);
    int bottom = 0, top = 0;
    for (const auto& o : b.objects) (o.lit_from == Condition::Bottom ? bottom : top) += o.lit_from == Condition::Bottom || o.lit_from == Condition::Top;
    CHECK(bottom == 1);
    CHECK(top == 4);
    CHECK(gen_light_prior_scene(rng, Condition::Left, 0).objects.size() == 1);
    CHECK_THROWS(gen_light_prior_scene(rng, Condition::Top, 18));
}

TEST_CASE("design enumeration nests condition, version, size, trial") {
    DatasetSpec spec;
    spec.family = Family::TwoAmongFive;
    spec.conditions = {Condition::Disjunctive, Condition::ShapeConjunctive};
    spec.set_sizes = {1, 2, 3};
    spec.trials_per_cell = 2;
    const auto d = enumerate_design(spec);
    CHECK(d.size() == 2 * 2 * 3 * 2);
    CHECK(d[0].task.condition == Condition::Disjunctive);
    CHECK(d[0].task.version == Version::Original);
    CHECK(d[0].n_distractors == 1);
    CHECK(d[1].n_distractors == 1);
    CHECK(d[2].n_distractors == 2);
    CHECK(d[6].task.version == Version::Reversed);
    CHECK(d[12].task.condition == Condition::ShapeConjunctive);
}

TEST_CASE("datasets are reproducible and match their manifests") {
    DatasetSpec spec;
    spec.family = Family::CircleSizes;
    spec.conditions = family_conditions(Family::CircleSizes);
    spec.set_sizes = {0, 5, 49};
    const auto a = build_dataset(spec);
    const auto b = build_dataset(spec);
    REQUIRE(a.manifest.size() == 9);
    CHECK(a.manifest == b.manifest);
    std::set<std::string> ids;
    for (std::size_t i = 0; i < a.manifest.size(); ++i) {
        const auto& e = a.manifest[i];
        ids.insert(e.image_id);
        CHECK(e.master_seed == 42);
        CHECK(e.n_distractors == a.scenes[i].n_distractors());
        CHECK(e.target_centre == a.scenes[i].target().centre);
        CHECK(e.ground_truth_cell == ground_truth_cell(e.target_centre));
    }
    CHECK(ids.size() == a.manifest.size());
    spec.master_seed = 43;
    CHECK_FALSE(build_dataset(spec).manifest == a.manifest);
}

TEST_CASE("full set size ranges") {
    CHECK(full_set_size_range(Family::CircleSizes).size() == 50);
    CHECK(full_set_size_range(Family::TwoAmongFive).back() == 99);
    CHECK(full_set_size_range(Family::LightPriors).back() == 17);
}
