#include "vsearch/adapters.hpp"
#include "vsearch/prompts.hpp"
#include "vsearch/stimgen.hpp"

#include <doctest.h>

using namespace vsearch;

namespace {

ManifestEntry entry(Family f, Condition c, std::optional<Version> v = {}) {
    ManifestEntry e;
    e.task_condition = {f, c, v};
    if (f == Family::TwoAmongFive || f == Family::TAmongL) e.target_digit = target_glyph(f, v.value_or(Version::Original));
    return e;
}

} // namespace

TEST_CASE("circle sizes cells prompt [PAPER]") {
    CHECK(build_prompt(entry(Family::CircleSizes, Condition::Small), Mode::Cells) ==
          "The image is divided into a 2x2 grid. Each element of the grid is referred to as a cell. In the "
          "presented image there are a number of circles. One of the circles is larger than the rest. In which "
          "cell is the larger circle? In the case where the larger circle overlaps multiple cells, please provide "
          "the cell where the centre of the larger circle is located. Please only respond with 'Cell (i,j)' where "
          "(i,j) corresponds to the ith row and jth column of the grid. The top left cell is Cell (1,1). If you "
          "are uncertain you may optionally add a note explaining that but please start your response with "
          "'Cell (i,j)'.");
}

TEST_CASE("light priors prompts [PAPER]") {
    CHECK(build_prompt(entry(Family::LightPriors, Condition::Top), Mode::Cells) ==
          "The image is divided into a 2x2 grid. Each element of the grid is referred to as a cell. In the "
          "presented image there are a number of spheres lit from different directions. Almost all of the "
          "spheres are lit from the same direction, but one sphere is lit from the opposite direction. In which "
          "cell is this oppositely lit sphere? In the case where the sphere overlaps multiple cells, please "
          "provide the cell where the centre of the sphere lit from the opposite direction is located. Please "
          "only respond with 'Cell (i,j)' where (i,j) corresponds to the ith row and jth column of the grid. The "
          "top left cell is Cell (1,1). If you are uncertain please guess but optionally add a description to "
          "note this. However, for ease of processing please begin your response with 'Cell (i,j)'.");
    CHECK(build_prompt(entry(Family::LightPriors, Condition::Right), Mode::Coordinates) ==
          "The presented image is 400x400 pixels large, and the origin (0,0) is in the top left of the image. In "
          "the presented image there are a number of spheres lit from different directions. Almost all of the "
          "spheres are lit from the same direction, but one sphere is lit from the opposite direction. What are "
          "the coordinates of the centre of the oppositely lit sphere? If you are uncertain please guess but "
          "optionally add a description to note this. However, for ease of processing please begin your "
          "response with a set of coordinates using round brackets.");
}

TEST_CASE("shape conjunctive prompt fills target and distractor [PAPER]") {
    const auto p = build_prompt(entry(Family::TwoAmongFive, Condition::ShapeConjunctive, Version::Original), Mode::Cells);
    CHECK(p ==
          "The image is divided into a 2x2 grid. Each element of the grid is referred to as a cell. In the "
          "presented image there are a number of objects. Almost all of the objects are the number five written "
          "as a numeral. There is a single two in the image, similarly represented by a numeral. In which cell is "
          "the two in? In the case where the two overlaps multiple cells, please provide the cell where the "
          "centre of the two is located. Please only respond with 'Cell (i,j)' where (i,j) corresponds to the "
          "ith row and jth column of the grid. The top left cell is Cell (1,1). Do not reply with anything "
          "else.");
    const auto r = build_prompt(entry(Family::TwoAmongFive, Condition::Disjunctive, Version::Reversed), Mode::Cells);
    CHECK(r.find("number two written") != std::string::npos);
    CHECK(r.find("single five") != std::string::npos);
}

TEST_CASE("shape-colour prompt names colour and shape") {
    auto e = entry(Family::TwoAmongFive, Condition::ShapeColourConjunctive, Version::Original);
    e.target_colour = PaletteColour::Green;
    const auto p = build_prompt(e, Mode::Cells);
    CHECK(p.find("In which cell is the green '2'?") != std::string::npos);
    CHECK(p.find('{') == std::string::npos);
    e.target_colour.reset();
    CHECK_THROWS_AS(build_prompt(e, Mode::Cells), MissingTemplate);
}

TEST_CASE("every prompt is fully filled and its mode is recoverable") {
    for (Family f : {Family::CircleSizes, Family::TwoAmongFive, Family::TAmongL, Family::LightPriors})
        for (Condition c : family_conditions(f))
            for (Version v : {Version::Original, Version::Reversed})
                for (Mode m : {Mode::Cells, Mode::Coordinates}) {
                    auto e = entry(f, c, family_has_version(f) ? std::optional(v) : std::nullopt);
                    e.target_colour = PaletteColour::Blue;
                    const auto p = build_prompt(e, m);
                    CHECK(p.find('{') == std::string::npos);
                    CHECK(infer_mode(p) == m);
                }
}

TEST_CASE("unknown placeholders are left alone") {
    CHECK(fill_template("a {x} b {y}", {{"x", "1"}}) == "a 1 b {y}");
    CHECK(fill_template("{", {}) == "{");
}

TEST_CASE("mismatched condition has no template") {
    CHECK_THROWS_AS(template_for({Family::CircleSizes, Condition::Top, {}}, Mode::Cells), MissingTemplate);
}

TEST_CASE("human prompts") {
    CHECK(human_prompt(entry(Family::CircleSizes, Condition::Large)) == "Find the largest circle");
    CHECK(human_prompt(entry(Family::LightPriors, Condition::Top)) == "Find the odd one out");
    auto e = entry(Family::TwoAmongFive, Condition::Disjunctive, Version::Original);
    e.target_colour = PaletteColour::Red;
    CHECK(human_prompt(e) == "Find the red 2");
}
