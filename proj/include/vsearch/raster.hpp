#pragma once

#include "vsearch/scene.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vsearch {

/// 8-bit RGB raster, row-major, no padding.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, Rgb fill);

    Rgb at(int x, int y) const {
        const auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) {
        auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    friend bool operator==(const Image&, const Image&) = default;
};

/// Hard-edged rasterisation: a pixel is covered when its centre is inside a
/// shape. Objects are painted in scene order.
Image render_scene(const Scene& scene);

/// Grey level of a sphere pixel at offset (dx, dy) from its centre.
std::uint8_t sphere_level(Condition lit_from, double dx, double dy, double radius);

/// Is the point (u, v), in the glyph's unrotated frame centred on the glyph,
/// covered by a stroke?
bool glyph_covers(Glyph g, double u, double v);

/// PNG, 8-bit RGB, non-interlaced, zlib level 6, adaptive filters, no
/// ancillary chunks. Identical pixels give identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(std::span<const std::uint8_t> bytes);

inline std::vector<std::uint8_t> encode_image(const Image& image) { return encode_png(image); }

} // namespace vsearch
