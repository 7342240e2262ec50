#pragma once

#include "vsearch/manifest.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vsearch {

struct TransportError : std::runtime_error {
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A chat model that takes one image and one text prompt and replies with text.
class ModelAdapter {
  public:
    virtual ~ModelAdapter() = default;

    virtual std::string id() const = 0;

    /// Throws TransportError on a failed request.
    virtual std::string send(std::span<const std::uint8_t> image, std::string_view prompt,
                             double temperature) = 0;

    /// Called once before a run; throws ConfigError when the model cannot be used.
    virtual void preflight() {}
};

/// Cells prompts all quote the 'Cell (i,j)' answer format.
Mode infer_mode(std::string_view prompt);

/// Answers from ground truth, looked up by image content hash.
class OracleAdapter final : public ModelAdapter {
  public:
    void add(std::span<const std::uint8_t> image, const ManifestEntry& entry);
    std::string id() const override { return "mock/oracle"; }
    std::string send(std::span<const std::uint8_t> image, std::string_view prompt,
                     double temperature) override;

  private:
    std::unordered_map<std::string, ManifestEntry> by_hash_;
};

/// Uniformly random cell (or point, in Coordinates mode). The draw is a pure
/// function of (seed, image, prompt), so runs are order independent.
class UniformRandomCellAdapter final : public ModelAdapter {
  public:
    explicit UniformRandomCellAdapter(std::uint64_t seed = 0) : seed_(seed) {}
    std::string id() const override { return "mock/uniform_random_cell"; }
    std::string send(std::span<const std::uint8_t> image, std::string_view prompt,
                     double temperature) override;

  private:
    std::uint64_t seed_;
};

/// Always "(200, 200)".
class FixedCentreAdapter final : public ModelAdapter {
  public:
    std::string id() const override { return "mock/fixed_centre"; }
    std::string send(std::span<const std::uint8_t>, std::string_view, double) override {
        return "(200, 200)";
    }
};

/// Always the same cell; in Coordinates mode, that cell's centre.
class FixedCellAdapter final : public ModelAdapter {
  public:
    explicit FixedCellAdapter(Cell cell) : cell_(cell) {}
    std::string id() const override;
    std::string send(std::span<const std::uint8_t>, std::string_view prompt, double) override;

  private:
    Cell cell_;
};

class RefuserAdapter final : public ModelAdapter {
  public:
    std::string id() const override { return "mock/refuser"; }
    std::string send(std::span<const std::uint8_t>, std::string_view, double) override {
        return "I'm sorry, but no target could be identified in this image.";
    }
};

/// Replies outside the label space: "(450, 500)" or "Cell (2,3)".
class OutOfRangeAdapter final : public ModelAdapter {
  public:
    std::string id() const override { return "mock/out_of_range"; }
    std::string send(std::span<const std::uint8_t>, std::string_view prompt, double) override;
};

struct TrialInput {
    ManifestEntry entry;
    std::vector<std::uint8_t> image; // PNG bytes
};

/// The standard mocks keyed by name: oracle, uniform_random_cell,
/// fixed_centre, refuser, out_of_range. The oracle learns every input image.
std::map<std::string, std::unique_ptr<ModelAdapter>>
mock_adapters(std::span<const TrialInput> dataset, std::uint64_t seed = 0);

/// Endpoint description for HttpChatAdapter.
struct AdapterConfig {
    std::string endpoint;      // full URL of the chat endpoint
    std::string auth_env;      // name of the env var holding the key; empty for none
    std::string model;
    std::string request_shape = "openai-chat"; // or "anthropic-messages"
    int max_tokens = 300;
    std::chrono::seconds timeout{120};
};

AdapterConfig adapter_config_from_json(const nlohmann::json& j);

/// Generic chat-completion client over HTTP(S).
class HttpChatAdapter final : public ModelAdapter {
  public:
    explicit HttpChatAdapter(AdapterConfig cfg);
    std::string id() const override { return cfg_.model; }
    std::string send(std::span<const std::uint8_t> image, std::string_view prompt,
                     double temperature) override;
    void preflight() override;

    /// Request body for the configured shape (exposed for tests).
    nlohmann::json request_body(std::span<const std::uint8_t> image, std::string_view prompt,
                                double temperature) const;
    /// Extracts the reply text from a response body.
    std::string response_text(const nlohmann::json& body) const;

  private:
    AdapterConfig cfg_;
    std::string origin_; // scheme://host:port
    std::string path_;
};

} // namespace vsearch
