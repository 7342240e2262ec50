#include "vsearch/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vsearch {

Rgb palette_rgb(PaletteColour c) {
    switch (c) {
    case PaletteColour::Red: return {255, 0, 0};
    case PaletteColour::Green: return {0, 128, 0};
    case PaletteColour::Blue: return {0, 0, 255};
    }
    return kWhite;
}

double geometry::glyph_footprint_radius() {
    return std::hypot(kGlyphWidth / 2.0, kGlyphHeight / 2.0);
}

const SceneObject& Scene::target() const {
    auto it = std::find_if(objects.begin(), objects.end(),
                           [](const SceneObject& o) { return o.is_target; });
    if (it == objects.end()) throw std::logic_error("scene has no target");
    return *it;
}

Condition opposite(Condition lighting) {
    switch (lighting) {
    case Condition::Top: return Condition::Bottom;
    case Condition::Bottom: return Condition::Top;
    case Condition::Left: return Condition::Right;
    case Condition::Right: return Condition::Left;
    default: throw std::invalid_argument("not a lighting direction");
    }
}

Glyph target_glyph(Family f, Version v) {
    const bool orig = v == Version::Original;
    if (f == Family::TAmongL) return orig ? Glyph::T : Glyph::L;
    return orig ? Glyph::Two : Glyph::Five;
}

Glyph distractor_glyph(Family f, Version v) {
    return target_glyph(f, v == Version::Original ? Version::Reversed : Version::Original);
}

} // namespace vsearch
