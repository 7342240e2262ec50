#include "vsearch/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace vsearch {

Image::Image(int w, int h, Rgb fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill.r;
        pixels[i + 1] = fill.g;
        pixels[i + 2] = fill.b;
    }
}

namespace {

struct Segment {
    double u0, v0, u1, v1;
};

// Seven-segment layout on a 16x24 box centred at the origin, stroke 3.
constexpr double kHalfW = geometry::kGlyphWidth / 2;
constexpr double kHalfH = geometry::kGlyphHeight / 2;
constexpr double kS = geometry::kGlyphStroke;

constexpr Segment kTop{-kHalfW, -kHalfH, kHalfW, -kHalfH + kS};
constexpr Segment kMiddle{-kHalfW, -kS / 2, kHalfW, kS / 2};
constexpr Segment kBottom{-kHalfW, kHalfH - kS, kHalfW, kHalfH};
constexpr Segment kUpperLeft{-kHalfW, -kHalfH, -kHalfW + kS, 0};
constexpr Segment kUpperRight{kHalfW - kS, -kHalfH, kHalfW, 0};
constexpr Segment kLowerLeft{-kHalfW, 0, -kHalfW + kS, kHalfH};
constexpr Segment kLowerRight{kHalfW - kS, 0, kHalfW, kHalfH};
constexpr Segment kStem{-kS / 2, -kHalfH, kS / 2, kHalfH};
constexpr Segment kLeftStem{-kHalfW, -kHalfH, -kHalfW + kS, kHalfH};

constexpr std::array kTwo{kTop, kUpperRight, kMiddle, kLowerLeft, kBottom};
constexpr std::array kFive{kTop, kUpperLeft, kMiddle, kLowerRight, kBottom};
constexpr std::array kTee{kTop, kStem};
constexpr std::array kEll{kLeftStem, kBottom};

template <std::size_t N>
bool any_covers(const std::array<Segment, N>& segs, double u, double v) {
    return std::any_of(segs.begin(), segs.end(), [&](const Segment& s) {
        return u >= s.u0 && u <= s.u1 && v >= s.v0 && v <= s.v1;
    });
}

struct PixelBox {
    int x0, y0, x1, y1; // inclusive
};

PixelBox clip_box(Point c, double r, const Image& img) {
    return {std::max(0, static_cast<int>(std::floor(c.x - r))),
            std::max(0, static_cast<int>(std::floor(c.y - r))),
            std::min(img.width - 1, static_cast<int>(std::ceil(c.x + r))),
            std::min(img.height - 1, static_cast<int>(std::ceil(c.y + r)))};
}

void draw_circle(Image& img, const SceneObject& o) {
    const auto box = clip_box(o.centre, o.radius, img);
    const double r2 = o.radius * o.radius;
    for (int y = box.y0; y <= box.y1; ++y)
        for (int x = box.x0; x <= box.x1; ++x) {
            const double dx = x + 0.5 - o.centre.x;
            const double dy = y + 0.5 - o.centre.y;
            if (dx * dx + dy * dy <= r2) img.set(x, y, o.colour);
        }
}

void draw_glyph(Image& img, const SceneObject& o) {
    const auto box = clip_box(o.centre, o.radius, img);
    const double theta = o.rotation_deg * std::numbers::pi / 180.0;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    const Glyph g = o.glyph.value_or(Glyph::Two);
    for (int y = box.y0; y <= box.y1; ++y)
        for (int x = box.x0; x <= box.x1; ++x) {
            const double dx = x + 0.5 - o.centre.x;
            const double dy = y + 0.5 - o.centre.y;
            // Inverse rotation back into the glyph frame.
            const double u = cs * dx + sn * dy;
            const double v = -sn * dx + cs * dy;
            if (glyph_covers(g, u, v)) img.set(x, y, o.colour);
        }
}

void draw_sphere(Image& img, const SceneObject& o) {
    const auto box = clip_box(o.centre, o.radius, img);
    const double r2 = o.radius * o.radius;
    const Condition lit = o.lit_from.value_or(Condition::Top);
    for (int y = box.y0; y <= box.y1; ++y)
        for (int x = box.x0; x <= box.x1; ++x) {
            const double dx = x + 0.5 - o.centre.x;
            const double dy = y + 0.5 - o.centre.y;
            if (dx * dx + dy * dy > r2) continue;
            const auto level = sphere_level(lit, dx, dy, o.radius);
            img.set(x, y, {level, level, level});
        }
}

Image light_priors_background() {
    Image img(kCanvasSize, kCanvasSize, {geometry::kRingLevel, geometry::kRingLevel, geometry::kRingLevel});
    const double c = kCanvasSize / 2.0;
    const double r2 = geometry::kArenaRadius * geometry::kArenaRadius;
    const Rgb arena{geometry::kArenaLevel, geometry::kArenaLevel, geometry::kArenaLevel};
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double dx = x + 0.5 - c;
            const double dy = y + 0.5 - c;
            if (dx * dx + dy * dy <= r2) img.set(x, y, arena);
        }
    return img;
}

} // namespace

bool glyph_covers(Glyph g, double u, double v) {
    switch (g) {
    case Glyph::Two: return any_covers(kTwo, u, v);
    case Glyph::Five: return any_covers(kFive, u, v);
    case Glyph::T: return any_covers(kTee, u, v);
    case Glyph::L: return any_covers(kEll, u, v);
    }
    return false;
}

std::uint8_t sphere_level(Condition lit_from, double dx, double dy, double radius) {
    double along = 0.0; // signed offset measured from the lit side
    switch (lit_from) {
    case Condition::Top: along = dy; break;
    case Condition::Bottom: along = -dy; break;
    case Condition::Left: along = dx; break;
    case Condition::Right: along = -dx; break;
    default: break;
    }
    const double t = std::clamp((along + radius) / (2.0 * radius), 0.0, 1.0);
    const double lit = geometry::kSphereLitLevel;
    const double dark = geometry::kSphereDarkLevel;
    return static_cast<std::uint8_t>(std::lround(lit + (dark - lit) * t));
}

Image render_scene(const Scene& scene) {
    Image img = scene.task.family == Family::LightPriors ? light_priors_background()
                                                         : Image(kCanvasSize, kCanvasSize, kWhite);
    for (const auto& o : scene.objects) {
        switch (o.kind) {
        case ObjectKind::Circle: draw_circle(img, o); break;
        case ObjectKind::Digit:
        case ObjectKind::Glyph: draw_glyph(img, o); break;
        case ObjectKind::Sphere: draw_sphere(img, o); break;
        }
    }
    return img;
}

} // namespace vsearch
