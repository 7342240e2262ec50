#include "vsearch/placement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vsearch {

bool Region::contains(Point p, double r) const {
    if (shape == Shape::Box)
        return p.x - r >= box.x0 && p.x + r <= box.x1 && p.y - r >= box.y0 && p.y + r <= box.y1;
    const double d = std::hypot(p.x - disc_centre.x, p.y - disc_centre.y);
    return d + r <= disc_radius;
}

namespace {

// Box the centre of a footprint of radius r may be sampled from.
Rect sampling_box(const Region& bounds, const Footprint& f) {
    Rect box;
    if (bounds.shape == Region::Shape::Box) {
        box = {bounds.box.x0 + f.radius, bounds.box.y0 + f.radius, bounds.box.x1 - f.radius,
               bounds.box.y1 - f.radius};
    } else {
        const double reach = bounds.disc_radius - f.radius;
        box = {bounds.disc_centre.x - reach, bounds.disc_centre.y - reach,
               bounds.disc_centre.x + reach, bounds.disc_centre.y + reach};
    }
    if (f.centre_window) {
        box.x0 = std::max(box.x0, f.centre_window->x0);
        box.y0 = std::max(box.y0, f.centre_window->y0);
        box.x1 = std::min(box.x1, f.centre_window->x1);
        box.y1 = std::min(box.y1, f.centre_window->y1);
    }
    return box;
}

bool in_window(Point p, const Footprint& f) {
    if (!f.centre_window) return true;
    const Rect& w = *f.centre_window;
    return p.x >= w.x0 && p.x < w.x1 && p.y >= w.y0 && p.y < w.y1;
}

} // namespace

std::vector<Point> place_nonoverlapping(Rng& rng, std::span<const Footprint> footprints,
                                        const Region& bounds, double min_gap,
                                        PlacementBudget budget) {
    std::vector<Point> centres;
    centres.reserve(footprints.size());

    for (int restart = 0; restart <= budget.restarts; ++restart) {
        centres.clear();
        bool stuck = false;
        for (std::size_t i = 0; i < footprints.size() && !stuck; ++i) {
            const Footprint& f = footprints[i];
            const Rect box = sampling_box(bounds, f);
            if (box.x0 > box.x1 || box.y0 > box.y1)
                throw PlacementExhausted("footprint " + std::to_string(i) +
                                         " cannot fit inside the region");
            bool placed = false;
            for (int attempt = 0; attempt < budget.attempts_per_object; ++attempt) {
                const Point p{rng.uniform(box.x0, box.x1), rng.uniform(box.y0, box.y1)};
                if (!bounds.contains(p, f.radius) || !in_window(p, f)) continue;
                bool clear = true;
                for (std::size_t j = 0; j < centres.size(); ++j) {
                    const double need = f.radius + footprints[j].radius + min_gap;
                    const double dx = p.x - centres[j].x;
                    const double dy = p.y - centres[j].y;
                    if (dx * dx + dy * dy < need * need) {
                        clear = false;
                        break;
                    }
                }
                if (clear) {
                    centres.push_back(p);
                    placed = true;
                    break;
                }
            }
            stuck = !placed;
        }
        if (!stuck) return centres;
    }
    throw PlacementExhausted("could not place " + std::to_string(footprints.size()) +
                             " objects after " + std::to_string(budget.restarts) + " restarts");
}

} // namespace vsearch
