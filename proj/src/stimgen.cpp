#include "vsearch/stimgen.hpp"

#include <array>
#include <cstdio>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vsearch {

namespace {

constexpr std::array<PaletteColour, 3> kPalette{PaletteColour::Red, PaletteColour::Green,
                                                PaletteColour::Blue};

void check_distractors(Family f, int n) {
    if (n < 0 || n > max_distractors(f))
        throw std::out_of_range(std::string(to_string(f)) + ": distractor count " +
                                std::to_string(n) + " outside 0.." +
                                std::to_string(max_distractors(f)));
}

void check_condition(Family f, Condition c) {
    if (!condition_in_family(f, c))
        throw std::invalid_argument(std::string(to_string(c)) + " is not a " +
                                    std::string(to_string(f)) + " condition");
}

PaletteColour draw_colour(Rng& rng) { return kPalette[rng.below(3)]; }

PaletteColour draw_other_colour(Rng& rng, PaletteColour not_this) {
    std::array<PaletteColour, 2> rest{};
    std::size_t k = 0;
    for (auto c : kPalette)
        if (c != not_this) rest[k++] = c;
    return rest[rng.below(2)];
}

std::optional<Rect> target_window(const SceneOptions& opts) {
    if (!opts.target_cell) return std::nullopt;
    return cell_rect(*opts.target_cell);
}

Scene gen_glyph_scene(Rng& rng, Family family, Condition condition, Version version,
                      int n_distractors, const SceneOptions& opts) {
    check_condition(family, condition);
    check_distractors(family, n_distractors);

    const Glyph tg = target_glyph(family, version);
    const Glyph dg = distractor_glyph(family, version);

    const PaletteColour a = opts.target_colour ? *opts.target_colour : draw_colour(rng);
    PaletteColour b = a;
    if (condition != Condition::ShapeConjunctive) {
        b = opts.distractor_colour ? *opts.distractor_colour : draw_other_colour(rng, a);
        if (a == b) throw std::invalid_argument("target and distractor colours must differ");
    }

    const double r = geometry::glyph_footprint_radius();
    std::vector<Footprint> footprints(static_cast<std::size_t>(n_distractors) + 1, Footprint{r, {}});
    footprints[0].centre_window = target_window(opts);
    const auto centres = place_nonoverlapping(rng, footprints, Region::canvas(), 0.0);

    Scene scene;
    scene.task = {family, condition, version};
    scene.objects.reserve(centres.size());
    for (std::size_t i = 0; i < centres.size(); ++i) {
        SceneObject o;
        o.kind = family == Family::TAmongL ? ObjectKind::Glyph : ObjectKind::Digit;
        o.centre = centres[i];
        o.radius = r;
        o.rotation_deg = rng.uniform(0.0, 360.0);
        if (i == 0) {
            o.is_target = true;
            o.glyph = tg;
            o.palette = a;
        } else {
            switch (condition) {
            case Condition::Disjunctive:
                o.glyph = dg;
                o.palette = b;
                break;
            case Condition::ShapeConjunctive:
                o.glyph = dg;
                o.palette = a;
                break;
            default: {
                // Alternate (target colour, other shape) / (other colour, target shape).
                const bool same_colour = (i - 1) % 2 == 0;
                o.glyph = same_colour ? dg : tg;
                o.palette = same_colour ? a : b;
                break;
            }
            }
        }
        o.colour = palette_rgb(*o.palette);
        scene.objects.push_back(o);
    }
    return scene;
}

} // namespace

Rect cell_rect(Cell c) {
    const double half = kCanvasSize / 2.0;
    return Rect{(c.col - 1) * half, (c.row - 1) * half, c.col * half, c.row * half};
}

Cell ground_truth_cell(Point p) {
    if (!(p.x >= 0.0 && p.x < kCanvasSize && p.y >= 0.0 && p.y < kCanvasSize))
        throw OutOfCanvas("target centre (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") is outside the canvas");
    const double half = kCanvasSize / 2.0;
    return Cell{p.y < half ? 1 : 2, p.x < half ? 1 : 2};
}

Scene gen_circle_scene(Rng& rng, Condition condition, int n_distractors, const SceneOptions& opts) {
    check_condition(Family::CircleSizes, condition);
    check_distractors(Family::CircleSizes, n_distractors);

    double target_r = geometry::kLargeTargetRadius;
    if (condition == Condition::Small) target_r = geometry::kSmallTargetRadius;
    if (condition == Condition::Medium) target_r = geometry::kMediumTargetRadius;

    const PaletteColour colour = opts.target_colour ? *opts.target_colour : draw_colour(rng);

    std::vector<Footprint> footprints(static_cast<std::size_t>(n_distractors) + 1,
                                      Footprint{geometry::kDistractorCircleRadius, {}});
    footprints[0] = Footprint{target_r, target_window(opts)};
    const auto centres = place_nonoverlapping(rng, footprints, Region::canvas(), 0.0);

    Scene scene;
    scene.task = {Family::CircleSizes, condition, std::nullopt};
    for (std::size_t i = 0; i < centres.size(); ++i) {
        SceneObject o;
        o.kind = ObjectKind::Circle;
        o.centre = centres[i];
        o.radius = footprints[i].radius;
        o.palette = colour;
        o.colour = palette_rgb(colour);
        o.is_target = i == 0;
        scene.objects.push_back(o);
    }
    return scene;
}

Scene gen_two_among_five_scene(Rng& rng, Condition condition, Version version, int n_distractors,
                               const SceneOptions& opts) {
    return gen_glyph_scene(rng, Family::TwoAmongFive, condition, version, n_distractors, opts);
}

Scene gen_t_among_l_scene(Rng& rng, Condition condition, Version version, int n_distractors,
                          const SceneOptions& opts) {
    return gen_glyph_scene(rng, Family::TAmongL, condition, version, n_distractors, opts);
}

Scene gen_light_prior_scene(Rng& rng, Condition direction, int n_distractors,
                            const SceneOptions& opts) {
    check_condition(Family::LightPriors, direction);
    check_distractors(Family::LightPriors, n_distractors);

    const Region arena = Region::disc({kCanvasSize / 2.0, kCanvasSize / 2.0}, geometry::kArenaRadius);
    std::vector<Footprint> footprints(static_cast<std::size_t>(n_distractors) + 1,
                                      Footprint{geometry::kSphereRadius, {}});
    footprints[0].centre_window = target_window(opts);
    const auto centres = place_nonoverlapping(rng, footprints, arena, geometry::kSphereGap);

    Scene scene;
    scene.task = {Family::LightPriors, direction, std::nullopt};
    for (std::size_t i = 0; i < centres.size(); ++i) {
        SceneObject o;
        o.kind = ObjectKind::Sphere;
        o.centre = centres[i];
        o.radius = geometry::kSphereRadius;
        o.colour = {geometry::kArenaLevel, geometry::kArenaLevel, geometry::kArenaLevel};
        o.is_target = i == 0;
        o.lit_from = i == 0 ? direction : opposite(direction);
        scene.objects.push_back(o);
    }
    return scene;
}

Scene gen_scene(Rng& rng, const TaskCondition& task, int n_distractors, const SceneOptions& opts) {
    switch (task.family) {
    case Family::CircleSizes: return gen_circle_scene(rng, task.condition, n_distractors, opts);
    case Family::TwoAmongFive:
        return gen_two_among_five_scene(rng, task.condition, task.version.value_or(Version::Original),
                                        n_distractors, opts);
    case Family::TAmongL:
        return gen_t_among_l_scene(rng, task.condition, task.version.value_or(Version::Original),
                                   n_distractors, opts);
    case Family::LightPriors: return gen_light_prior_scene(rng, task.condition, n_distractors, opts);
    }
    throw std::invalid_argument("unknown family");
}

std::vector<Condition> family_conditions(Family f) {
    std::vector<Condition> out;
    for (int c = 0; c <= static_cast<int>(Condition::Right); ++c)
        if (condition_in_family(f, static_cast<Condition>(c))) out.push_back(static_cast<Condition>(c));
    return out;
}

std::vector<int> full_set_size_range(Family f) {
    std::vector<int> out;
    for (int n = 0; n <= max_distractors(f); ++n) out.push_back(n);
    return out;
}

std::string make_image_id(std::string_view prefix, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "-%06zu", index);
    return std::string(prefix) + buf;
}

ManifestEntry make_manifest_entry(const Scene& scene, std::string image_id,
                                  std::uint64_t master_seed) {
    const SceneObject& t = scene.target();
    ManifestEntry e;
    e.image_id = std::move(image_id);
    e.task_condition = scene.task;
    e.n_distractors = scene.n_distractors();
    e.master_seed = master_seed;
    e.target_centre = t.centre;
    e.ground_truth_cell = ground_truth_cell(t.centre);
    e.target_colour = t.palette;
    e.target_digit = t.glyph;
    for (const auto& o : scene.objects) {
        if (o.is_target || !o.palette) continue;
        if (scene.task.condition == Condition::ShapeColourConjunctive && o.palette == t.palette)
            continue;
        e.distractor_colour = o.palette;
        break;
    }
    return e;
}

std::vector<DesignPoint> enumerate_design(const DatasetSpec& spec) {
    for (Condition c : spec.conditions) check_condition(spec.family, c);
    for (int n : spec.set_sizes) check_distractors(spec.family, n);
    if (spec.trials_per_cell < 1) throw std::invalid_argument("trials_per_cell must be >= 1");

    std::vector<std::optional<Version>> versions;
    if (family_has_version(spec.family)) {
        if (spec.versions.empty()) versions = {Version::Original, Version::Reversed};
        else versions.assign(spec.versions.begin(), spec.versions.end());
    } else {
        versions = {std::nullopt};
    }

    std::vector<DesignPoint> design;
    for (Condition c : spec.conditions)
        for (const auto& v : versions)
            for (int n : spec.set_sizes)
                for (int t = 0; t < spec.trials_per_cell; ++t)
                    design.push_back({TaskCondition{spec.family, c, v}, n});
    return design;
}

namespace {

Dataset assemble(const DatasetSpec& spec, std::vector<Scene> scenes) {
    Dataset ds;
    ds.master_seed = spec.master_seed;
    ds.family = spec.family;
    const std::string prefix =
        spec.id_prefix.empty() ? std::string(to_string(spec.family)) : spec.id_prefix;
    ds.manifest.reserve(scenes.size());
    for (std::size_t i = 0; i < scenes.size(); ++i)
        ds.manifest.push_back(make_manifest_entry(scenes[i], make_image_id(prefix, i), spec.master_seed));
    ds.scenes = std::move(scenes);
    return ds;
}

[[noreturn]] void rethrow_at(std::size_t index, const std::exception& e) {
    throw PlacementExhausted("scene " + std::to_string(index) + ": " + e.what());
}

} // namespace

Dataset build_dataset_serial(const DatasetSpec& spec) {
    const auto design = enumerate_design(spec);
    std::vector<Scene> scenes;
    scenes.reserve(design.size());
    for (std::size_t i = 0; i < design.size(); ++i) {
        Rng rng(sub_seed(spec.master_seed, i));
        try {
            scenes.push_back(gen_scene(rng, design[i].task, design[i].n_distractors));
        } catch (const PlacementExhausted& e) {
            rethrow_at(i, e);
        }
    }
    return assemble(spec, std::move(scenes));
}

Dataset build_dataset(const DatasetSpec& spec) {
    const auto design = enumerate_design(spec);
    const auto count = static_cast<std::ptrdiff_t>(design.size());
    std::vector<Scene> scenes(design.size());

    std::size_t failed_at = std::numeric_limits<std::size_t>::max();
    std::string failure;

#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            Rng rng(sub_seed(spec.master_seed, idx));
            scenes[idx] = gen_scene(rng, design[idx].task, design[idx].n_distractors);
        } catch (const PlacementExhausted& e) {
#pragma omp critical(vsearch_build_failure)
            if (idx < failed_at) {
                failed_at = idx;
                failure = e.what();
            }
        }
    }
    if (failed_at != std::numeric_limits<std::size_t>::max())
        rethrow_at(failed_at, PlacementExhausted(failure));
    return assemble(spec, std::move(scenes));
}

} // namespace vsearch
