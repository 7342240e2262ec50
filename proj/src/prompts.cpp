#include "vsearch/prompts.hpp"

namespace vsearch {

namespace {

#define GRID_INTRO                                                                                 \
    "The image is divided into a 2x2 grid. Each element of the grid is referred to as a cell. "
#define CANVAS_INTRO                                                                               \
    "The presented image is 400x400 pixels large, and the origin (0,0) is in the top left of the " \
    "image. "
#define CELL_FORMAT                                                                                \
    "Please only respond with 'Cell (i,j)' where (i,j) corresponds to the ith row and jth column " \
    "of the grid. The top left cell is Cell (1,1). "
#define OPTIONAL_NOTE                                                                              \
    "If you are uncertain you may optionally add a note explaining that but please start your "    \
    "response with 'Cell (i,j)'."
#define COORD_TAIL                                                                                 \
    "If you are uncertain please guess but optionally add a description to note this. However, "   \
    "for ease of processing please begin your response with a set of coordinates using round "     \
    "brackets."

constexpr std::string_view kCircleCells =
    GRID_INTRO "In the presented image there are a number of circles. One of the circles is larger "
               "than the rest. In which cell is the larger circle? In the case where the larger "
               "circle overlaps multiple cells, please provide the cell where the centre of the "
               "larger circle is located. " CELL_FORMAT OPTIONAL_NOTE;

constexpr std::string_view kCircleCoords =
    CANVAS_INTRO "In the presented image there are a number of circles. One of the circles is "
                 "larger than the others. What are the coordinates of the larger circle? Please "
                 "give your best estimate. " COORD_TAIL;

constexpr std::string_view kDigitShapeCells =
    GRID_INTRO "In the presented image there are a number of objects. Almost all of the objects "
               "are the number {distractor} written as a numeral. There is a single {target} in "
               "the image, similarly represented by a numeral. In which cell is the {target} in? "
               "In the case where the {target} overlaps multiple cells, please provide the cell "
               "where the centre of the {target} is located. " CELL_FORMAT
               "Do not reply with anything else.";

constexpr std::string_view kDigitShapeCoords =
    CANVAS_INTRO "In the presented image there are a number of objects. Almost all of the objects "
                 "are the number {distractor} written as a numeral. There is a single {target} in "
                 "the image, similarly represented by a numeral. What are the coordinates of the "
                 "centre of the {target}? Please give your best estimate. " COORD_TAIL;

constexpr std::string_view kDigitColourCells =
    GRID_INTRO "In the presented image there are a number of objects. There are '2's and '5's "
               "written as numerals. In which cell is the {colour} '{shape}'? In the case where "
               "the {colour} '{shape}' overlaps multiple cells, please provide the cell where the "
               "centre of the {shape} is located. " CELL_FORMAT OPTIONAL_NOTE;

constexpr std::string_view kDigitColourCoords =
    CANVAS_INTRO "In the presented image there are a number of objects. There are '2's and '5's "
                 "written as numerals. What are the coordinates of the {colour} '{shape}'? Please "
                 "give your best estimate. " COORD_TAIL;

constexpr std::string_view kLetterShapeCells =
    GRID_INTRO "In the presented image there are a number of objects. Almost all of the objects "
               "are the letter {distractor} written as a letter. There is a single {target} in "
               "the image, similarly represented by a letter. In which cell is the {target} in? "
               "In the case where the {target} overlaps multiple cells, please provide the cell "
               "where the centre of the {target} is located. " CELL_FORMAT
               "Do not reply with anything else.";

constexpr std::string_view kLetterShapeCoords =
    CANVAS_INTRO "In the presented image there are a number of objects. Almost all of the objects "
                 "are the letter {distractor} written as a letter. There is a single {target} in "
                 "the image, similarly represented by a letter. What are the coordinates of the "
                 "centre of the {target}? Please give your best estimate. " COORD_TAIL;

constexpr std::string_view kLetterColourCells =
    GRID_INTRO "In the presented image there are a number of objects. There are 'T's and 'L's "
               "written as letters. In which cell is the {colour} '{shape}'? In the case where "
               "the {colour} '{shape}' overlaps multiple cells, please provide the cell where the "
               "centre of the {shape} is located. " CELL_FORMAT OPTIONAL_NOTE;

constexpr std::string_view kLetterColourCoords =
    CANVAS_INTRO "In the presented image there are a number of objects. There are 'T's and 'L's "
                 "written as letters. What are the coordinates of the {colour} '{shape}'? Please "
                 "give your best estimate. " COORD_TAIL;

constexpr std::string_view kLightCells =
    GRID_INTRO "In the presented image there are a number of spheres lit from different "
               "directions. Almost all of the spheres are lit from the same direction, but one "
               "sphere is lit from the opposite direction. In which cell is this oppositely lit "
               "sphere? In the case where the sphere overlaps multiple cells, please provide the "
               "cell where the centre of the sphere lit from the opposite direction is located. "
               CELL_FORMAT "If you are uncertain please guess but optionally add a description "
               "to note this. However, for ease of processing please begin your response with "
               "'Cell (i,j)'.";

constexpr std::string_view kLightCoords =
    CANVAS_INTRO "In the presented image there are a number of spheres lit from different "
                 "directions. Almost all of the spheres are lit from the same direction, but one "
                 "sphere is lit from the opposite direction. What are the coordinates of the "
                 "centre of the oppositely lit sphere? " COORD_TAIL;

#undef GRID_INTRO
#undef CANVAS_INTRO
#undef CELL_FORMAT
#undef OPTIONAL_NOTE
#undef COORD_TAIL

} // namespace

std::string_view glyph_word(Glyph g) {
    switch (g) {
    case Glyph::Two: return "two";
    case Glyph::Five: return "five";
    case Glyph::T: return "T";
    case Glyph::L: return "L";
    }
    return "?";
}

PromptTemplate template_for(const TaskCondition& task, Mode mode) {
    if (!condition_in_family(task.family, task.condition))
        throw MissingTemplate("no prompt for " + std::string(to_string(task.condition)) + " in " +
                              std::string(to_string(task.family)));
    const bool cells = mode == Mode::Cells;
    std::string_view text;
    switch (task.family) {
    case Family::CircleSizes: text = cells ? kCircleCells : kCircleCoords; break;
    case Family::LightPriors: text = cells ? kLightCells : kLightCoords; break;
    case Family::TwoAmongFive:
        if (task.condition == Condition::ShapeColourConjunctive)
            text = cells ? kDigitColourCells : kDigitColourCoords;
        else
            text = cells ? kDigitShapeCells : kDigitShapeCoords;
        break;
    case Family::TAmongL:
        if (task.condition == Condition::ShapeColourConjunctive)
            text = cells ? kLetterColourCells : kLetterColourCoords;
        else
            text = cells ? kLetterShapeCells : kLetterShapeCoords;
        break;
    }
    return PromptTemplate{task.family, mode, text};
}

std::string fill_template(std::string_view text, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(text.size() + 32);
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '{') {
            const auto close = text.find('}', i);
            if (close != std::string_view::npos) {
                const std::string key(text.substr(i + 1, close - i - 1));
                if (auto it = values.find(key); it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += text[i++];
    }
    return out;
}

std::string build_prompt(const ManifestEntry& entry, Mode mode) {
    const auto& task = entry.task_condition;
    const auto tmpl = template_for(task, mode);
    std::map<std::string, std::string> values;
    if (task.family == Family::TwoAmongFive || task.family == Family::TAmongL) {
        const Version v = task.version.value_or(Version::Original);
        const Glyph tg = entry.target_digit.value_or(target_glyph(task.family, v));
        values["target"] = glyph_word(tg);
        values["distractor"] = glyph_word(distractor_glyph(task.family, v));
        values["shape"] = glyph_symbol(tg);
        if (entry.target_colour) values["colour"] = colour_word(*entry.target_colour);
        else if (task.condition == Condition::ShapeColourConjunctive)
            throw MissingTemplate("shape-colour prompt needs a target colour");
    }
    return fill_template(tmpl.text, values);
}

std::string human_prompt(const ManifestEntry& entry) {
    const auto& task = entry.task_condition;
    switch (task.family) {
    case Family::CircleSizes: return "Find the largest circle";
    case Family::LightPriors: return "Find the odd one out";
    case Family::TwoAmongFive:
    case Family::TAmongL: {
        const Glyph tg = entry.target_digit.value_or(
            target_glyph(task.family, task.version.value_or(Version::Original)));
        std::string s = "Find the ";
        if (entry.target_colour) s += std::string(colour_word(*entry.target_colour)) + " ";
        return s + std::string(glyph_symbol(tg));
    }
    }
    return {};
}

} // namespace vsearch
