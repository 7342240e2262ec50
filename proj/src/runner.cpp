#include "vsearch/runner.hpp"

#include "vsearch/hashing.hpp"
#include "vsearch/prompts.hpp"
#include "vsearch/rng.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <fstream>
#include <thread>

namespace vsearch {

using nlohmann::json;

json to_json(const TrialRecord& t) {
    json j;
    j["image_id"] = t.image_id;
    j["prompt"] = t.prompt;
    j["mode"] = to_string(t.mode);
    j["model"] = t.model;
    j["response"] = t.response;
    j["request_ts"] = t.request_ts;
    j["response_ts"] = t.response_ts;
    j["retries"] = t.retries;
    j["from_cache"] = t.from_cache;
    j["error"] = t.error ? json(*t.error) : json(nullptr);
    j["image_sha256"] = t.image_sha256;
    j["prompt_sha256"] = t.prompt_sha256;
    return j;
}

TrialRecord trial_record_from_json(const json& j) {
    TrialRecord t;
    t.image_id = j.at("image_id").get<std::string>();
    t.prompt = j.value("prompt", "");
    t.mode = mode_from_string(j.at("mode").get<std::string>());
    t.model = j.value("model", "");
    t.response = j.value("response", "");
    t.request_ts = j.value("request_ts", "");
    t.response_ts = j.value("response_ts", "");
    t.retries = j.value("retries", 0);
    t.from_cache = j.value("from_cache", false);
    if (j.contains("error") && !j["error"].is_null()) t.error = j["error"].get<std::string>();
    t.image_sha256 = j.value("image_sha256", "");
    t.prompt_sha256 = j.value("prompt_sha256", "");
    return t;
}

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(*file_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue; // torn trailing write
        entries_[key(j.value("model", ""), j.value("image_sha256", ""), j.value("prompt_sha256", ""))] =
            j.value("response", "");
    }
}

std::string ResponseCache::key(const std::string& model, const std::string& image_sha,
                               const std::string& prompt_sha) {
    return model + '\n' + image_sha + '\n' + prompt_sha;
}

std::optional<std::string> ResponseCache::lookup(const std::string& model, const std::string& image_sha,
                                                 const std::string& prompt_sha) const {
    std::lock_guard lock(mu_);
    const auto it = entries_.find(key(model, image_sha, prompt_sha));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const std::string& model, const std::string& image_sha,
                          const std::string& prompt_sha, const std::string& response) {
    std::lock_guard lock(mu_);
    entries_[key(model, image_sha, prompt_sha)] = response;
    if (!file_) return;
    std::ofstream out(*file_, std::ios::app);
    out << json{{"model", model},
                {"image_sha256", image_sha},
                {"prompt_sha256", prompt_sha},
                {"response", response}}
               .dump()
        << '\n';
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::chrono::milliseconds backoff_delay(const RetryPolicy& p, int attempt) {
    return p.base_delay * (1LL << std::min(attempt - 1, 20));
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    const auto n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    std::snprintf(buf + n, sizeof buf - n, ".%03lldZ", static_cast<long long>(ms));
    return buf;
}

namespace {

TrialRecord run_one(ModelAdapter& adapter, const TrialInput& in, const RunOptions& opts,
                    std::uint64_t jitter_seed) {
    TrialRecord rec;
    rec.image_id = in.entry.image_id;
    rec.mode = opts.mode;
    rec.model = adapter.id();
    rec.prompt = build_prompt(in.entry, opts.mode);
    rec.image_sha256 = sha256_hex(in.image);
    rec.prompt_sha256 = sha256_hex(rec.prompt);
    rec.request_ts = utc_timestamp();

    if (opts.cache) {
        if (auto hit = opts.cache->lookup(rec.model, rec.image_sha256, rec.prompt_sha256)) {
            rec.response = *hit;
            rec.from_cache = true;
            rec.response_ts = utc_timestamp();
            return rec;
        }
    }

    Rng jitter(jitter_seed);
    const int attempts = std::max(1, opts.retry.max_attempts);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        try {
            rec.response = adapter.send(in.image, rec.prompt, opts.temperature);
            rec.error.reset();
            rec.response_ts = utc_timestamp();
            if (opts.cache) opts.cache->store(rec.model, rec.image_sha256, rec.prompt_sha256, rec.response);
            return rec;
        } catch (const TransportError& e) {
            rec.error = e.what();
            if (attempt == attempts) break;
            ++rec.retries;
            const auto base = backoff_delay(opts.retry, attempt);
            const double scale = 1.0 + opts.retry.jitter * (2.0 * jitter.uniform01() - 1.0);
            std::this_thread::sleep_for(
                std::chrono::milliseconds(static_cast<long long>(static_cast<double>(base.count()) * scale)));
        } catch (const std::exception& e) {
            rec.error = e.what(); // not retryable
            break;
        }
    }
    rec.response.clear();
    rec.response_ts = utc_timestamp();
    return rec;
}

} // namespace

std::vector<TrialRecord> run_trials(ModelAdapter& adapter, std::span<const TrialInput> inputs,
                                    const RunOptions& opts) {
    adapter.preflight();
    std::vector<TrialRecord> out(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++)
            out[i] = run_one(adapter, inputs[i], opts, sub_seed(0x7e57ULL, i));
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts.parallel)),
                                               std::max<std::size_t>(1, inputs.size()));
    if (workers == 1) {
        worker();
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    pool.clear(); // joins
    return out;
}

std::vector<TrialInput> load_trial_inputs(const DatasetDir& ds) {
    std::vector<TrialInput> out;
    out.reserve(ds.manifest.entries.size());
    for (const auto& e : ds.manifest.entries) out.push_back({e, read_file(ds.image_path(e))});
    return out;
}

} // namespace vsearch
