#pragma once

#include "vsearch/manifest.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vsearch {

struct MissingTemplate : std::invalid_argument {
    explicit MissingTemplate(const std::string& what) : std::invalid_argument(what) {}
};

/// Prompt text with {target}, {distractor}, {colour} and {shape} placeholders.
struct PromptTemplate {
    Family family;
    Mode mode;
    std::string_view text;
};

PromptTemplate template_for(const TaskCondition& task, Mode mode);

/// Replaces each `{name}` with values.at(name). Unknown placeholders are left verbatim.
std::string fill_template(std::string_view text, const std::map<std::string, std::string>& values);

/// The exact model prompt for a manifest entry.
std::string build_prompt(const ManifestEntry& entry, Mode mode);

/// On-screen instruction shown to human participants.
std::string human_prompt(const ManifestEntry& entry);

/// Word used for a glyph inside prompts ("two", "five", "T", "L").
std::string_view glyph_word(Glyph g);

} // namespace vsearch
