#pragma once

#include "vsearch/human/schedule.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsearch::human {

struct SessionComplete : std::runtime_error {
    SessionComplete() : std::runtime_error("session complete") {}
};
struct DuplicateResponse : std::runtime_error {
    explicit DuplicateResponse(int index) : std::runtime_error("trial " + std::to_string(index) + " already answered") {}
};
struct UnknownTrial : std::runtime_error {
    explicit UnknownTrial(int index) : std::runtime_error("trial " + std::to_string(index) + " was not served") {}
};
struct InvalidKey : std::invalid_argument {
    explicit InvalidKey(const std::string& key) : std::invalid_argument("invalid response key '" + key + "'") {}
};
struct UnknownSession : std::runtime_error {
    explicit UnknownSession(const std::string& id) : std::runtime_error("unknown session " + id) {}
};

/// Q -> (1,1), P -> (1,2), A -> (2,1), L -> (2,2); case-insensitive.
std::optional<Cell> key_to_cell(std::string_view key);

struct HumanResponse {
    std::string session_id;
    int trial_index = 0;
    char key = 'Q';
    Cell cell;
    double rt_ms = 0.0;        // client-measured from stimulus onset
    std::string timestamp;     // server receipt time
    bool correct = false;
    bool practice = false;
};

nlohmann::json to_json(const HumanResponse& r);

struct TrialPayload {
    std::string session_id;
    int trial_index = 0;
    int total = 0;
    bool practice = false;
    bool feedback = false;
    std::string image_url;
    int fixation_ms = 0;
    int stimulus_ms = 0;
    std::string prompt;
    bool resumed = false; // re-delivery of a served, unanswered trial
};

nlohmann::json to_json(const TrialPayload& p);

/// Runtime state of one participant's session. All methods are serialised
/// by an internal mutex.
class Session {
  public:
    Session(std::string id, SessionSchedule schedule, std::optional<std::filesystem::path> log_file = {});

    const std::string& id() const { return id_; }
    const SessionSchedule& schedule() const { return schedule_; }

    /// The next trial in schedule order, or the outstanding one if it has not
    /// been answered yet. Throws SessionComplete when every trial is answered.
    TrialPayload next_trial();

    /// Records a keypress for a served trial and scores it.
    HumanResponse record_response(int trial_index, std::string_view key, double rt_ms);

    /// Snapshot of the responses recorded so far (indexed by trial).
    std::vector<std::optional<HumanResponse>> responses() const;
    int served_count() const;

  private:
    void log(const nlohmann::json& event);
    TrialPayload payload(int index, bool resumed) const;

    std::string id_;
    SessionSchedule schedule_;
    std::optional<std::filesystem::path> log_file_;
    mutable std::mutex mu_;
    int next_unserved_ = 0;
    std::vector<std::optional<HumanResponse>> responses_;
};

/// All sessions of a server. Session lookup takes a shared lock; mutations
/// happen inside each Session.
class SessionStore {
  public:
    explicit SessionStore(std::uint64_t master_seed = 42, std::optional<std::filesystem::path> log_dir = {},
                          int pool_per_slot = 4);

    std::shared_ptr<Session> create(Family family, const std::string& participant);
    std::shared_ptr<Session> get(const std::string& id) const;
    std::vector<std::shared_ptr<Session>> all() const;

  private:
    const StimulusPool& pool(Family f, bool practice);

    std::uint64_t master_seed_;
    std::optional<std::filesystem::path> log_dir_;
    int pool_per_slot_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::pair<Family, bool>, std::unique_ptr<StimulusPool>> pools_;
    int counter_ = 0;
};

struct ParticipantSummary {
    std::string participant;
    std::string session_id;
    Family family = Family::CircleSizes;
    int answered = 0; // experimental trials only
    int correct = 0;
    double mean_accuracy = 0.0;
    bool below_chance = false; // flagged for replacement
};

struct HumanExport {
    std::string trials_csv;
    std::string participants_csv;
    std::vector<ParticipantSummary> participants;
};

inline constexpr double kChanceLevel = 0.25;

/// Per-trial rows plus per-participant accuracy with below-chance flags.
HumanExport export_human_results(const std::vector<std::shared_ptr<Session>>& sessions);

} // namespace vsearch::human
