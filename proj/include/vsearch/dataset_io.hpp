#pragma once

#include "vsearch/manifest.hpp"
#include "vsearch/stimgen.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace vsearch {

using Bytes = std::vector<std::uint8_t>;

/// Render and PNG-encode every scene. Parallel over scenes.
std::vector<Bytes> render_dataset(const Dataset& ds);
/// Single-threaded reference for render_dataset.
std::vector<Bytes> render_dataset_serial(const Dataset& ds);

Manifest to_manifest(const Dataset& ds);

/// Writes `<dir>/manifest.json` and `<dir>/<image_id>.png` for every entry.
void write_dataset(const std::filesystem::path& dir, const Dataset& ds);

/// A dataset on disk: manifest plus the directory its images live in.
struct DatasetDir {
    std::filesystem::path dir;
    Manifest manifest;

    std::filesystem::path image_path(const ManifestEntry& e) const { return dir / (e.image_id + ".png"); }
};

DatasetDir read_dataset_dir(const std::filesystem::path& dir);
Manifest read_manifest(const std::filesystem::path& file);

Bytes read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& file, std::string_view text);

} // namespace vsearch
