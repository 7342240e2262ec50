#include "vsearch/adapters.hpp"

#include "vsearch/hashing.hpp"
#include "vsearch/rng.hpp"
#include "vsearch/scoring.hpp"
#include "vsearch/stimgen.hpp"

#include <httplib.h>

#include <cstdlib>

namespace vsearch {

using nlohmann::json;

Mode infer_mode(std::string_view prompt) {
    return prompt.find("'Cell (i,j)'") != std::string_view::npos ? Mode::Cells : Mode::Coordinates;
}

void OracleAdapter::add(std::span<const std::uint8_t> image, const ManifestEntry& entry) {
    by_hash_[sha256_hex(image)] = entry;
}

std::string OracleAdapter::send(std::span<const std::uint8_t> image, std::string_view prompt, double) {
    const auto it = by_hash_.find(sha256_hex(image));
    if (it == by_hash_.end()) return "I do not recognise this image.";
    if (infer_mode(prompt) == Mode::Cells) return format_answer(it->second.ground_truth_cell);
    return format_answer(it->second.target_centre);
}

namespace {

std::uint64_t hash_prefix(const std::string& hex) {
    return std::strtoull(hex.substr(0, 16).c_str(), nullptr, 16);
}

} // namespace

std::string UniformRandomCellAdapter::send(std::span<const std::uint8_t> image,
                                           std::string_view prompt, double) {
    const std::uint64_t key = hash_prefix(sha256_hex(image)) ^ mix64(hash_prefix(sha256_hex(prompt)));
    Rng rng(sub_seed(seed_, key));
    if (infer_mode(prompt) == Mode::Cells) return format_answer(cell_from_index(static_cast<int>(rng.below(4))));
    return format_answer(Point{rng.uniform(0, kCanvasSize), rng.uniform(0, kCanvasSize)});
}

std::string FixedCellAdapter::id() const {
    return "mock/fixed_cell_" + std::to_string(cell_.row) + std::to_string(cell_.col);
}

std::string FixedCellAdapter::send(std::span<const std::uint8_t>, std::string_view prompt, double) {
    if (infer_mode(prompt) == Mode::Cells) return format_answer(cell_);
    const Rect r = cell_rect(cell_);
    return format_answer(Point{(r.x0 + r.x1) / 2, (r.y0 + r.y1) / 2});
}

std::string OutOfRangeAdapter::send(std::span<const std::uint8_t>, std::string_view prompt, double) {
    return infer_mode(prompt) == Mode::Cells ? "Cell (2,3)" : "(450, 500)";
}

std::map<std::string, std::unique_ptr<ModelAdapter>> mock_adapters(std::span<const TrialInput> dataset,
                                                                   std::uint64_t seed) {
    auto oracle = std::make_unique<OracleAdapter>();
    for (const auto& t : dataset) oracle->add(t.image, t.entry);
    std::map<std::string, std::unique_ptr<ModelAdapter>> out;
    out["oracle"] = std::move(oracle);
    out["uniform_random_cell"] = std::make_unique<UniformRandomCellAdapter>(seed);
    out["fixed_centre"] = std::make_unique<FixedCentreAdapter>();
    out["refuser"] = std::make_unique<RefuserAdapter>();
    out["out_of_range"] = std::make_unique<OutOfRangeAdapter>();
    return out;
}

AdapterConfig adapter_config_from_json(const json& j) {
    AdapterConfig c;
    c.endpoint = j.at("endpoint").get<std::string>();
    c.auth_env = j.value("auth_env", "");
    c.model = j.at("model").get<std::string>();
    c.request_shape = j.value("request_shape", "openai-chat");
    c.max_tokens = j.value("max_tokens", 300);
    c.timeout = std::chrono::seconds(j.value("timeout_s", 120));
    if (c.request_shape != "openai-chat" && c.request_shape != "anthropic-messages")
        throw ConfigError("unknown request_shape '" + c.request_shape + "'");
    return c;
}

HttpChatAdapter::HttpChatAdapter(AdapterConfig cfg) : cfg_(std::move(cfg)) {
    const auto scheme_end = cfg_.endpoint.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL");
    const auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
    origin_ = cfg_.endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : cfg_.endpoint.substr(path_start);
    const auto scheme = cfg_.endpoint.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw ConfigError("unsupported scheme " + scheme);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") throw ConfigError("built without TLS support; https endpoints unavailable");
#endif
}

namespace {

std::string api_key(const AdapterConfig& cfg) {
    if (cfg.auth_env.empty()) return {};
    const char* v = std::getenv(cfg.auth_env.c_str());
    return v ? std::string(v) : std::string();
}

httplib::Headers auth_headers(const AdapterConfig& cfg) {
    httplib::Headers h;
    const auto key = api_key(cfg);
    if (cfg.request_shape == "anthropic-messages") {
        if (!key.empty()) h.emplace("x-api-key", key);
        h.emplace("anthropic-version", "2023-06-01");
    } else if (!key.empty()) {
        h.emplace("Authorization", "Bearer " + key);
    }
    return h;
}

} // namespace

void HttpChatAdapter::preflight() {
    if (!cfg_.auth_env.empty() && !std::getenv(cfg_.auth_env.c_str()))
        throw ConfigError("environment variable " + cfg_.auth_env + " is not set");
    httplib::Client cli(origin_);
    cli.set_connection_timeout(std::chrono::seconds(10));
    auto res = cli.Get("/");
    if (!res) throw ConfigError("endpoint " + origin_ + " is unreachable: " + httplib::to_string(res.error()));
}

json HttpChatAdapter::request_body(std::span<const std::uint8_t> image, std::string_view prompt,
                                   double temperature) const {
    const std::string b64 = base64_encode(image);
    json body;
    body["model"] = cfg_.model;
    body["max_tokens"] = cfg_.max_tokens;
    body["temperature"] = temperature;
    json content = json::array();
    if (cfg_.request_shape == "anthropic-messages") {
        content.push_back({{"type", "image"},
                           {"source", {{"type", "base64"}, {"media_type", "image/png"}, {"data", b64}}}});
        content.push_back({{"type", "text"}, {"text", prompt}});
    } else {
        content.push_back({{"type", "text"}, {"text", prompt}});
        content.push_back({{"type", "image_url"}, {"image_url", {{"url", "data:image/png;base64," + b64}}}});
    }
    body["messages"] = json::array({{{"role", "user"}, {"content", content}}});
    return body;
}

std::string HttpChatAdapter::response_text(const json& body) const {
    try {
        if (cfg_.request_shape == "anthropic-messages") {
            std::string text;
            for (const auto& part : body.at("content"))
                if (part.value("type", "") == "text") text += part.at("text").get<std::string>();
            return text;
        }
        const auto& content = body.at("choices").at(0).at("message").at("content");
        if (content.is_string()) return content.get<std::string>();
        std::string text;
        for (const auto& part : content)
            if (part.value("type", "") == "text") text += part.at("text").get<std::string>();
        return text;
    } catch (const json::exception& e) {
        throw TransportError(std::string("malformed response body: ") + e.what());
    }
}

std::string HttpChatAdapter::send(std::span<const std::uint8_t> image, std::string_view prompt,
                                  double temperature) {
    httplib::Client cli(origin_);
    cli.set_connection_timeout(std::chrono::seconds(10));
    cli.set_read_timeout(cfg_.timeout);
    cli.set_write_timeout(cfg_.timeout);
    const auto body = request_body(image, prompt, temperature).dump();
    auto res = cli.Post(path_, auth_headers(cfg_), body, "application/json");
    if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) throw TransportError("response is not JSON");
    return response_text(parsed);
}

} // namespace vsearch
