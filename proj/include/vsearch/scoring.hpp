#pragma once

#include "vsearch/manifest.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsearch {

/// sqrt(400^2 + 400^2): the score given to refusals and unusable replies.
inline constexpr double kMaxErrorPx = 565.68542494923801952;

struct ModeMismatch : std::invalid_argument {
    explicit ModeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

enum class AnswerKind { Cell, Coordinates, Refusal, Unparseable };

struct ParsedAnswer {
    AnswerKind kind = AnswerKind::Unparseable;
    Cell cell;          // valid when kind == Cell
    Point point;        // valid when kind == Coordinates
    /// Set for "Cell (i,j)" replies with i or j outside {1,2}; kind is Unparseable.
    bool invalid_cell = false;
    std::string raw_excerpt;
};

/// First "Cell (i,j)" occurrence, case-insensitive, ASCII digits, flexible
/// whitespace inside the parentheses.
ParsedAnswer parse_cell(std::string_view text);

/// First "(x, y)" numeric pair; replies without one are Refusal when they
/// read as a refusal, Unparseable otherwise.
ParsedAnswer parse_coordinates(std::string_view text);

ParsedAnswer parse_answer(std::string_view text, Mode mode);

/// Canonical reply strings; parse_* inverts them exactly.
std::string format_answer(Cell c);
std::string format_answer(Point p);

struct ScoreFlags {
    bool invalid_cell = false;
    bool refusal = false;
    bool out_of_range = false;
    bool unparseable = false;
    bool transport_error = false;
    friend bool operator==(const ScoreFlags&, const ScoreFlags&) = default;
};

struct ScoreRecord {
    std::string trial_id; // image_id of the manifest entry
    std::string model;
    Mode mode = Mode::Cells;
    std::optional<bool> correct;   // Cells only
    std::optional<double> error_px; // Coordinates only
    std::optional<Cell> picked_cell;
    std::optional<Point> answer;
    ScoreFlags flags;
    friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

ScoreRecord score_cells(const ParsedAnswer& answer, const ManifestEntry& entry);
ScoreRecord score_coordinates(const ParsedAnswer& answer, const ManifestEntry& entry);

double euclidean(Point a, Point b);

nlohmann::json to_json(const ScoreRecord& s);
ScoreRecord score_record_from_json(const nlohmann::json& j);

} // namespace vsearch
