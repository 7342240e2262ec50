#pragma once

#include "vsearch/common.hpp"
#include "vsearch/rng.hpp"

#include <optional>
#include <span>
#include <vector>

namespace vsearch {

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Where object footprints may lie: either an axis-aligned box or a disc.
struct Region {
    enum class Shape { Box, Disc } shape = Shape::Box;
    Rect box{0, 0, kCanvasSize, kCanvasSize};
    Point disc_centre{kCanvasSize / 2.0, kCanvasSize / 2.0};
    double disc_radius = 0.0;

    static Region canvas() { return Region{}; }
    static Region disc(Point c, double r) { return Region{Shape::Disc, {}, c, r}; }

    /// True when a disc of radius r at p lies fully inside the region.
    bool contains(Point p, double r) const;
};

struct Footprint {
    double radius = 0.0;
    /// Optional extra box the centre must fall in (e.g. a target cell).
    std::optional<Rect> centre_window;
};

struct PlacementBudget {
    int attempts_per_object = 10'000;
    int restarts = 100;
};

/// Rejection-sample centres so that every footprint lies inside `bounds` and
/// every pair keeps distance >= r_i + r_j + min_gap. Objects are placed in
/// order; on a stuck object the whole layout restarts.
std::vector<Point> place_nonoverlapping(Rng& rng, std::span<const Footprint> footprints,
                                        const Region& bounds, double min_gap,
                                        PlacementBudget budget = {});

} // namespace vsearch
