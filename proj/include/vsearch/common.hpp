#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vsearch {

inline constexpr int kCanvasSize = 400;

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// A 2x2 grid cell, 1-based row and column.
struct Cell {
    int row = 1;
    int col = 1;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Row-major index 0..3 of a valid cell.
inline int cell_index(Cell c) { return (c.row - 1) * 2 + (c.col - 1); }
inline Cell cell_from_index(int i) { return Cell{i / 2 + 1, i % 2 + 1}; }
std::string format_cell(Cell c); // "Cell (i,j)"

enum class Family { CircleSizes, TwoAmongFive, TAmongL, LightPriors };

/// Every family-specific condition lives in one enum; `condition_in_family`
/// says which values are legal for a family.
enum class Condition {
    Small,
    Medium,
    Large,
    Disjunctive,
    ShapeConjunctive,
    ShapeColourConjunctive,
    Top,
    Bottom,
    Left,
    Right,
};

/// Original = "2 among 5" / "T among L"; Reversed = "5 among 2" / "L among T".
enum class Version { Original, Reversed };

enum class Mode { Cells, Coordinates };

enum class PaletteColour { Red, Green, Blue };

enum class Glyph { Two, Five, T, L };

bool condition_in_family(Family f, Condition c);
bool family_has_version(Family f);
int max_distractors(Family f);

std::string_view to_string(Family f);
std::string_view to_string(Condition c);
std::string_view to_string(Version v, Family f);
std::string_view to_string(Mode m);
std::string_view to_string(PaletteColour c);
std::string_view to_string(Glyph g);

Family family_from_string(std::string_view s);
Condition condition_from_string(std::string_view s);
Version version_from_string(std::string_view s);
Mode mode_from_string(std::string_view s);
PaletteColour colour_from_string(std::string_view s);
Glyph glyph_from_string(std::string_view s);

/// Lowercase colour word used in prompts ("red").
std::string_view colour_word(PaletteColour c);
/// Character drawn for a glyph ("2", "5", "T", "L").
std::string_view glyph_symbol(Glyph g);

struct PlacementExhausted : std::runtime_error {
    explicit PlacementExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfCanvas : std::out_of_range {
    explicit OutOfCanvas(const std::string& what) : std::out_of_range(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace vsearch
