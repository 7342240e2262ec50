#pragma once

#include "vsearch/common.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vsearch {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

Rgb palette_rgb(PaletteColour c);
inline constexpr Rgb kWhite{255, 255, 255};

enum class ObjectKind { Circle, Digit, Sphere, Glyph };

/// Fixed stimulus geometry (pixels).
namespace geometry {
inline constexpr double kDistractorCircleRadius = 20.0;
inline constexpr double kSmallTargetRadius = 22.5;
inline constexpr double kMediumTargetRadius = 25.0;
inline constexpr double kLargeTargetRadius = 30.0;

inline constexpr double kGlyphWidth = 16.0;
inline constexpr double kGlyphHeight = 24.0;
inline constexpr double kGlyphStroke = 3.0;
/// Radius of the disc bounding a glyph box under any rotation.
double glyph_footprint_radius();

inline constexpr double kSphereRadius = 20.0;
inline constexpr double kSphereGap = 20.0;
inline constexpr double kArenaRadius = 190.0;
inline constexpr std::uint8_t kArenaLevel = 128;
inline constexpr std::uint8_t kRingLevel = 0;
inline constexpr std::uint8_t kSphereLitLevel = 230;
inline constexpr std::uint8_t kSphereDarkLevel = 40;
} // namespace geometry

struct SceneObject {
    ObjectKind kind = ObjectKind::Circle;
    Point centre;
    /// Circles and spheres: radius. Glyphs: bounding-disc radius.
    double radius = 0.0;
    Rgb colour;
    std::optional<PaletteColour> palette;
    double rotation_deg = 0.0;
    std::optional<Condition> lit_from; // Top/Bottom/Left/Right
    std::optional<Glyph> glyph;
    bool is_target = false;
};

struct TaskCondition {
    Family family = Family::CircleSizes;
    Condition condition = Condition::Large;
    std::optional<Version> version;
    friend bool operator==(const TaskCondition&, const TaskCondition&) = default;
};

struct Scene {
    TaskCondition task;
    std::vector<SceneObject> objects;

    const SceneObject& target() const;
    int n_distractors() const { return static_cast<int>(objects.size()) - 1; }
};

Condition opposite(Condition lighting);

/// Target and distractor glyphs for a glyph family / version.
Glyph target_glyph(Family f, Version v);
Glyph distractor_glyph(Family f, Version v);

} // namespace vsearch
