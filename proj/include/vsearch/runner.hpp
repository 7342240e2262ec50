#pragma once

#include "vsearch/adapters.hpp"
#include "vsearch/dataset_io.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vsearch {

struct TrialRecord {
    std::string image_id;
    std::string prompt;
    Mode mode = Mode::Cells;
    std::string model;
    std::string response;
    std::string request_ts;
    std::string response_ts;
    int retries = 0;
    bool from_cache = false;
    std::optional<std::string> error; // set for transport-error trials
    std::string image_sha256;
    std::string prompt_sha256;
};

nlohmann::json to_json(const TrialRecord& t);
TrialRecord trial_record_from_json(const nlohmann::json& j);

/// Responses keyed by (model, image hash, prompt hash), persisted as an
/// append-only JSON-lines file. Later lines win on load.
class ResponseCache {
  public:
    ResponseCache() = default; // in-memory only
    explicit ResponseCache(std::filesystem::path file);

    std::optional<std::string> lookup(const std::string& model, const std::string& image_sha,
                                      const std::string& prompt_sha) const;
    void store(const std::string& model, const std::string& image_sha,
               const std::string& prompt_sha, const std::string& response);
    std::size_t size() const;

  private:
    static std::string key(const std::string& model, const std::string& image_sha,
                           const std::string& prompt_sha);

    std::optional<std::filesystem::path> file_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, std::string> entries_;
};

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{1000};
    double jitter = 0.25; // +/- fraction of each delay
};

struct RunOptions {
    Mode mode = Mode::Cells;
    int parallel = 1;
    double temperature = 0.0;
    RetryPolicy retry;
    ResponseCache* cache = nullptr;
};

/// One record per input, in input order. Transport failures are recorded,
/// never thrown. At most `parallel` requests are in flight.
std::vector<TrialRecord> run_trials(ModelAdapter& adapter, std::span<const TrialInput> inputs,
                                    const RunOptions& opts);

/// Loads every manifest entry and its PNG from a dataset directory.
std::vector<TrialInput> load_trial_inputs(const DatasetDir& ds);

/// Delay before retry number `attempt` (1-based), without jitter.
std::chrono::milliseconds backoff_delay(const RetryPolicy& p, int attempt);

std::string utc_timestamp();

} // namespace vsearch
