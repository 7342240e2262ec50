#include "vsearch/dataset_io.hpp"

#include "vsearch/raster.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace vsearch {

namespace fs = std::filesystem;

std::vector<Bytes> render_dataset(const Dataset& ds) {
    std::vector<Bytes> out(ds.scenes.size());
    const auto count = static_cast<std::ptrdiff_t>(ds.scenes.size());
#pragma omp parallel for schedule(dynamic, 2)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = encode_png(render_scene(ds.scenes[static_cast<std::size_t>(i)]));
    return out;
}

std::vector<Bytes> render_dataset_serial(const Dataset& ds) {
    std::vector<Bytes> out;
    out.reserve(ds.scenes.size());
    for (const auto& s : ds.scenes) out.push_back(encode_png(render_scene(s)));
    return out;
}

Manifest to_manifest(const Dataset& ds) {
    Manifest m;
    m.master_seed = ds.master_seed;
    m.entries = ds.manifest;
    return m;
}

Bytes read_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& file, std::span<const std::uint8_t> bytes) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

void write_text(const fs::path& file, std::string_view text) {
    write_file(file, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_dataset(const fs::path& dir, const Dataset& ds) {
    fs::create_directories(dir);
    const auto images = render_dataset(ds);
    for (std::size_t i = 0; i < images.size(); ++i)
        write_file(dir / (ds.manifest[i].image_id + ".png"), images[i]);
    write_text(dir / "manifest.json", dump_manifest(to_manifest(ds)));
}

Manifest read_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open manifest " + file.string());
    return manifest_from_json(nlohmann::json::parse(in));
}

DatasetDir read_dataset_dir(const fs::path& dir) {
    return DatasetDir{dir, read_manifest(dir / "manifest.json")};
}

} // namespace vsearch
