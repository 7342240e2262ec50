#include "vsearch/common.hpp"

#include <array>
#include <utility>

namespace vsearch {

namespace {

template <typename E, std::size_t N>
E lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s,
         const char* what) {
    for (const auto& [value, name] : table)
        if (name == s) return value;
    throw ParseError(std::string("unknown ") + what + ": '" + std::string(s) + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
    for (const auto& [value, name] : table)
        if (value == e) return name;
    return "?";
}

constexpr std::array<std::pair<Family, std::string_view>, 4> kFamilies{{
    {Family::CircleSizes, "CircleSizes"},
    {Family::TwoAmongFive, "TwoAmongFive"},
    {Family::TAmongL, "TAmongL"},
    {Family::LightPriors, "LightPriors"},
}};

constexpr std::array<std::pair<Condition, std::string_view>, 10> kConditions{{
    {Condition::Small, "Small"},
    {Condition::Medium, "Medium"},
    {Condition::Large, "Large"},
    {Condition::Disjunctive, "Disjunctive"},
    {Condition::ShapeConjunctive, "ShapeConjunctive"},
    {Condition::ShapeColourConjunctive, "ShapeColourConjunctive"},
    {Condition::Top, "Top"},
    {Condition::Bottom, "Bottom"},
    {Condition::Left, "Left"},
    {Condition::Right, "Right"},
}};

constexpr std::array<std::pair<Mode, std::string_view>, 2> kModes{{
    {Mode::Cells, "cells"},
    {Mode::Coordinates, "coordinates"},
}};

constexpr std::array<std::pair<PaletteColour, std::string_view>, 3> kColours{{
    {PaletteColour::Red, "Red"},
    {PaletteColour::Green, "Green"},
    {PaletteColour::Blue, "Blue"},
}};

constexpr std::array<std::pair<Glyph, std::string_view>, 4> kGlyphs{{
    {Glyph::Two, "Two"},
    {Glyph::Five, "Five"},
    {Glyph::T, "T"},
    {Glyph::L, "L"},
}};

} // namespace

std::string format_cell(Cell c) {
    return "Cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

bool condition_in_family(Family f, Condition c) {
    switch (f) {
    case Family::CircleSizes:
        return c == Condition::Small || c == Condition::Medium || c == Condition::Large;
    case Family::TwoAmongFive:
    case Family::TAmongL:
        return c == Condition::Disjunctive || c == Condition::ShapeConjunctive ||
               c == Condition::ShapeColourConjunctive;
    case Family::LightPriors:
        return c == Condition::Top || c == Condition::Bottom || c == Condition::Left ||
               c == Condition::Right;
    }
    return false;
}

bool family_has_version(Family f) { return f == Family::TwoAmongFive || f == Family::TAmongL; }

int max_distractors(Family f) {
    switch (f) {
    case Family::CircleSizes: return 49;
    case Family::TwoAmongFive:
    case Family::TAmongL: return 99;
    case Family::LightPriors: return 17;
    }
    return 0;
}

std::string_view to_string(Family f) { return name_of(kFamilies, f); }
std::string_view to_string(Condition c) { return name_of(kConditions, c); }
std::string_view to_string(Mode m) { return name_of(kModes, m); }
std::string_view to_string(PaletteColour c) { return name_of(kColours, c); }
std::string_view to_string(Glyph g) { return name_of(kGlyphs, g); }

std::string_view to_string(Version v, Family f) {
    if (f == Family::TAmongL) return v == Version::Original ? "TAmongL" : "LAmongT";
    return v == Version::Original ? "TwoAmongFive" : "FiveAmongTwo";
}

Family family_from_string(std::string_view s) { return lookup(kFamilies, s, "family"); }
Condition condition_from_string(std::string_view s) { return lookup(kConditions, s, "condition"); }
Mode mode_from_string(std::string_view s) { return lookup(kModes, s, "mode"); }
PaletteColour colour_from_string(std::string_view s) { return lookup(kColours, s, "colour"); }
Glyph glyph_from_string(std::string_view s) { return lookup(kGlyphs, s, "glyph"); }

Version version_from_string(std::string_view s) {
    if (s == "TwoAmongFive" || s == "TAmongL") return Version::Original;
    if (s == "FiveAmongTwo" || s == "LAmongT") return Version::Reversed;
    throw ParseError("unknown direction: '" + std::string(s) + "'");
}

std::string_view colour_word(PaletteColour c) {
    switch (c) {
    case PaletteColour::Red: return "red";
    case PaletteColour::Green: return "green";
    case PaletteColour::Blue: return "blue";
    }
    return "?";
}

std::string_view glyph_symbol(Glyph g) {
    switch (g) {
    case Glyph::Two: return "2";
    case Glyph::Five: return "5";
    case Glyph::T: return "T";
    case Glyph::L: return "L";
    }
    return "?";
}

} // namespace vsearch
