#include "vsearch/manifest.hpp"

namespace vsearch {

using nlohmann::json;

json to_json(const TaskCondition& t) {
    json j;
    j["family"] = to_string(t.family);
    j["condition"] = to_string(t.condition);
    j["direction"] = t.version ? json(to_string(*t.version, t.family)) : json(nullptr);
    return j;
}

TaskCondition task_condition_from_json(const json& j) {
    TaskCondition t;
    t.family = family_from_string(j.at("family").get<std::string>());
    t.condition = condition_from_string(j.at("condition").get<std::string>());
    if (!condition_in_family(t.family, t.condition))
        throw ParseError("condition does not belong to family");
    if (j.contains("direction") && !j["direction"].is_null())
        t.version = version_from_string(j["direction"].get<std::string>());
    return t;
}

namespace {

template <typename E>
json optional_name(const std::optional<E>& v) {
    return v ? json(to_string(*v)) : json(nullptr);
}

bool present(const json& j, const char* key) { return j.contains(key) && !j[key].is_null(); }

} // namespace

json to_json(const ManifestEntry& e) {
    json j;
    j["image_id"] = e.image_id;
    j["task_condition"] = to_json(e.task_condition);
    j["n_distractors"] = e.n_distractors;
    j["master_seed"] = e.master_seed;
    j["target_centre"] = {e.target_centre.x, e.target_centre.y};
    j["ground_truth_cell"] = {e.ground_truth_cell.row, e.ground_truth_cell.col};
    j["target_colour"] = optional_name(e.target_colour);
    j["distractor_colour"] = optional_name(e.distractor_colour);
    j["target_digit"] = optional_name(e.target_digit);
    return j;
}

ManifestEntry manifest_entry_from_json(const json& j) {
    ManifestEntry e;
    e.image_id = j.at("image_id").get<std::string>();
    e.task_condition = task_condition_from_json(j.at("task_condition"));
    e.n_distractors = j.at("n_distractors").get<int>();
    e.master_seed = j.at("master_seed").get<std::uint64_t>();
    const auto& c = j.at("target_centre");
    e.target_centre = {c.at(0).get<double>(), c.at(1).get<double>()};
    const auto& g = j.at("ground_truth_cell");
    e.ground_truth_cell = {g.at(0).get<int>(), g.at(1).get<int>()};
    if (present(j, "target_colour"))
        e.target_colour = colour_from_string(j["target_colour"].get<std::string>());
    if (present(j, "distractor_colour"))
        e.distractor_colour = colour_from_string(j["distractor_colour"].get<std::string>());
    if (present(j, "target_digit"))
        e.target_digit = glyph_from_string(j["target_digit"].get<std::string>());
    return e;
}

json to_json(const Manifest& m) {
    json j;
    j["schema_version"] = m.schema_version;
    j["master_seed"] = m.master_seed;
    j["entries"] = json::array();
    for (const auto& e : m.entries) j["entries"].push_back(to_json(e));
    return j;
}

Manifest manifest_from_json(const json& j) {
    Manifest m;
    m.schema_version = j.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion)
        throw ParseError("unsupported manifest schema_version " + std::to_string(m.schema_version));
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& e : j.at("entries")) m.entries.push_back(manifest_entry_from_json(e));
    return m;
}

std::string dump_manifest(const Manifest& m) { return to_json(m).dump(2) + "\n"; }

} // namespace vsearch
