#include "vsearch/scoring.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace vsearch {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

struct Cursor {
    std::string_view s;
    std::size_t i;

    bool done() const { return i >= s.size(); }
    void skip_space() {
        while (!done() && is_space(s[i])) ++i;
    }
    bool eat(char c) {
        if (!done() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    /// One or more ASCII digits; values beyond 9 digits saturate.
    std::optional<long> integer() {
        const std::size_t start = i;
        long v = 0;
        while (!done() && is_digit(s[i])) {
            if (i - start < 9) v = v * 10 + (s[i] - '0');
            ++i;
        }
        if (i == start) return std::nullopt;
        return i - start > 9 ? 1'000'000'000L : v;
    }
    /// [+-]? (digits ('.' digits*)? | '.' digits)
    std::optional<double> number() {
        const std::size_t start = i;
        if (!done() && (s[i] == '+' || s[i] == '-')) ++i;
        const std::size_t body = i;
        while (!done() && is_digit(s[i])) ++i;
        bool had_int = i > body;
        bool had_frac = false;
        if (!done() && s[i] == '.') {
            const std::size_t dot = i++;
            while (!done() && is_digit(s[i])) ++i;
            had_frac = i > dot + 1;
            if (!had_int && !had_frac) {
                i = start;
                return std::nullopt;
            }
        }
        if (!had_int && !had_frac) {
            i = start;
            return std::nullopt;
        }
        std::size_t from = start;
        if (s[from] == '+') ++from;
        double v = 0.0;
        const auto res = std::from_chars(s.data() + from, s.data() + i, v);
        if (res.ec != std::errc()) {
            // Out-of-range magnitudes: keep the sign, saturate.
            v = (s[start] == '-') ? -1e300 : 1e300;
        }
        return v;
    }
};

bool starts_with_ci(std::string_view s, std::size_t at, std::string_view word) {
    if (at + word.size() > s.size()) return false;
    for (std::size_t k = 0; k < word.size(); ++k)
        if (lower(s[at + k]) != word[k]) return false;
    return true;
}

bool contains_ci(std::string_view s, std::string_view word) {
    if (word.size() > s.size()) return false;
    for (std::size_t at = 0; at + word.size() <= s.size(); ++at)
        if (starts_with_ci(s, at, word)) return true;
    return false;
}

constexpr std::array<std::string_view, 16> kRefusalPhrases{
    "no target",   "cannot",        "can't",       "can not",      "unable",     "not able",
    "could not",   "couldn't",      "not possible", "sorry",        "apologi",    "not identify",
    "no such",     "not present",   "don't see",   "do not see",
};

} // namespace

ParsedAnswer parse_cell(std::string_view text) {
    for (std::size_t at = 0; at < text.size(); ++at) {
        if (!starts_with_ci(text, at, "cell")) continue;
        Cursor c{text, at + 4};
        c.skip_space();
        if (!c.eat('(')) continue;
        c.skip_space();
        const auto row = c.integer();
        if (!row) continue;
        c.skip_space();
        if (!c.eat(',')) continue;
        c.skip_space();
        const auto col = c.integer();
        if (!col) continue;
        c.skip_space();
        if (!c.eat(')')) continue;

        ParsedAnswer a;
        a.raw_excerpt = std::string(text.substr(at, c.i - at));
        const bool valid = (*row == 1 || *row == 2) && (*col == 1 || *col == 2);
        if (valid) {
            a.kind = AnswerKind::Cell;
            a.cell = Cell{static_cast<int>(*row), static_cast<int>(*col)};
        } else {
            a.kind = AnswerKind::Unparseable;
            a.invalid_cell = true;
        }
        return a;
    }
    return ParsedAnswer{};
}

ParsedAnswer parse_coordinates(std::string_view text) {
    for (std::size_t at = 0; at < text.size(); ++at) {
        if (text[at] != '(') continue;
        Cursor c{text, at + 1};
        c.skip_space();
        const auto x = c.number();
        if (!x) continue;
        c.skip_space();
        if (!c.eat(',')) continue;
        c.skip_space();
        const auto y = c.number();
        if (!y) continue;
        c.skip_space();
        if (!c.eat(')')) continue;

        ParsedAnswer a;
        a.kind = AnswerKind::Coordinates;
        a.point = Point{*x, *y};
        a.raw_excerpt = std::string(text.substr(at, c.i - at));
        return a;
    }
    ParsedAnswer a;
    for (auto phrase : kRefusalPhrases)
        if (contains_ci(text, phrase)) {
            a.kind = AnswerKind::Refusal;
            a.raw_excerpt = std::string(phrase);
            break;
        }
    return a;
}

ParsedAnswer parse_answer(std::string_view text, Mode mode) {
    return mode == Mode::Cells ? parse_cell(text) : parse_coordinates(text);
}

std::string format_answer(Cell c) { return format_cell(c); }

std::string format_answer(Point p) {
    char buf[64];
    auto put = [&](char* first, double v) {
        return std::to_chars(first, buf + sizeof buf, v, std::chars_format::fixed).ptr;
    };
    char* end = buf;
    *end++ = '(';
    end = put(end, p.x);
    *end++ = ',';
    *end++ = ' ';
    end = put(end, p.y);
    *end++ = ')';
    return std::string(buf, end);
}

double euclidean(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

ScoreRecord score_cells(const ParsedAnswer& answer, const ManifestEntry& entry) {
    if (answer.kind == AnswerKind::Coordinates || answer.kind == AnswerKind::Refusal)
        throw ModeMismatch("score_cells given a coordinates-mode answer");
    ScoreRecord s;
    s.trial_id = entry.image_id;
    s.mode = Mode::Cells;
    if (answer.kind == AnswerKind::Cell) {
        s.picked_cell = answer.cell;
        s.correct = answer.cell == entry.ground_truth_cell;
    } else {
        s.correct = false;
        s.flags.invalid_cell = answer.invalid_cell;
        s.flags.unparseable = !answer.invalid_cell;
    }
    return s;
}

ScoreRecord score_coordinates(const ParsedAnswer& answer, const ManifestEntry& entry) {
    if (answer.kind == AnswerKind::Cell || answer.invalid_cell)
        throw ModeMismatch("score_coordinates given a cells-mode answer");
    ScoreRecord s;
    s.trial_id = entry.image_id;
    s.mode = Mode::Coordinates;
    switch (answer.kind) {
    case AnswerKind::Coordinates: {
        const Point p = answer.point;
        s.answer = p;
        s.error_px = euclidean(p, entry.target_centre);
        s.flags.out_of_range = !(p.x >= 0 && p.x <= kCanvasSize && p.y >= 0 && p.y <= kCanvasSize);
        break;
    }
    case AnswerKind::Refusal:
        s.error_px = kMaxErrorPx;
        s.flags.refusal = true;
        break;
    default:
        s.error_px = kMaxErrorPx;
        s.flags.unparseable = true;
        break;
    }
    return s;
}

nlohmann::json to_json(const ScoreRecord& s) {
    using nlohmann::json;
    json j;
    j["trial_id"] = s.trial_id;
    j["model"] = s.model;
    j["mode"] = to_string(s.mode);
    j["correct"] = s.correct ? json(*s.correct) : json(nullptr);
    j["error_px"] = s.error_px ? json(*s.error_px) : json(nullptr);
    j["picked_cell"] = s.picked_cell ? json{s.picked_cell->row, s.picked_cell->col} : json(nullptr);
    j["answer"] = s.answer ? json{s.answer->x, s.answer->y} : json(nullptr);
    j["flags"] = {{"invalid_cell", s.flags.invalid_cell},
                  {"refusal", s.flags.refusal},
                  {"out_of_range", s.flags.out_of_range},
                  {"unparseable", s.flags.unparseable},
                  {"transport_error", s.flags.transport_error}};
    return j;
}

ScoreRecord score_record_from_json(const nlohmann::json& j) {
    ScoreRecord s;
    s.trial_id = j.at("trial_id").get<std::string>();
    s.model = j.value("model", "");
    s.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("correct") && !j["correct"].is_null()) s.correct = j["correct"].get<bool>();
    if (j.contains("error_px") && !j["error_px"].is_null()) s.error_px = j["error_px"].get<double>();
    if (j.contains("picked_cell") && !j["picked_cell"].is_null())
        s.picked_cell = Cell{j["picked_cell"].at(0).get<int>(), j["picked_cell"].at(1).get<int>()};
    if (j.contains("answer") && !j["answer"].is_null())
        s.answer = Point{j["answer"].at(0).get<double>(), j["answer"].at(1).get<double>()};
    if (j.contains("flags")) {
        const auto& f = j["flags"];
        s.flags.invalid_cell = f.value("invalid_cell", false);
        s.flags.refusal = f.value("refusal", false);
        s.flags.out_of_range = f.value("out_of_range", false);
        s.flags.unparseable = f.value("unparseable", false);
        s.flags.transport_error = f.value("transport_error", false);
    }
    return s;
}

} // namespace vsearch
