#include "vsearch/human/session.hpp"

#include "vsearch/runner.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vsearch::human {

std::optional<Cell> key_to_cell(std::string_view key) {
    if (key.size() != 1) return std::nullopt;
    switch (std::toupper(static_cast<unsigned char>(key[0]))) {
    case 'Q': return Cell{1, 1};
    case 'P': return Cell{1, 2};
    case 'A': return Cell{2, 1};
    case 'L': return Cell{2, 2};
    default: return std::nullopt;
    }
}

nlohmann::json to_json(const HumanResponse& r) {
    return {{"session_id", r.session_id},
            {"trial_index", r.trial_index},
            {"key", std::string(1, r.key)},
            {"cell", {r.cell.row, r.cell.col}},
            {"rt_ms", r.rt_ms},
            {"timestamp", r.timestamp},
            {"correct", r.correct},
            {"practice", r.practice}};
}

nlohmann::json to_json(const TrialPayload& p) {
    return {{"session_id", p.session_id},   {"trial_index", p.trial_index}, {"total", p.total},
            {"practice", p.practice},       {"feedback", p.feedback},       {"image_url", p.image_url},
            {"fixation_ms", p.fixation_ms}, {"stimulus_ms", p.stimulus_ms}, {"prompt", p.prompt},
            {"resumed", p.resumed}};
}

Session::Session(std::string id, SessionSchedule schedule, std::optional<std::filesystem::path> log_file)
    : id_(std::move(id)), schedule_(std::move(schedule)), log_file_(std::move(log_file)),
      responses_(schedule_.trials.size()) {
    log({{"event", "created"},
         {"participant", schedule_.participant},
         {"family", to_string(schedule_.family)},
         {"seed", schedule_.seed},
         {"trials", schedule_.trials.size()}});
}

void Session::log(const nlohmann::json& event) {
    if (!log_file_) return;
    auto e = event;
    e["session_id"] = id_;
    e["ts"] = utc_timestamp();
    std::ofstream out(*log_file_, std::ios::app);
    out << e.dump() << '\n';
}

TrialPayload Session::payload(int index, bool resumed) const {
    const auto& t = schedule_.trials[static_cast<std::size_t>(index)];
    TrialPayload p;
    p.session_id = id_;
    p.trial_index = index;
    p.total = static_cast<int>(schedule_.trials.size());
    p.practice = t.practice;
    p.feedback = t.feedback;
    p.image_url = "/images/" + id_ + "/" + std::to_string(index) + ".png";
    p.fixation_ms = t.fixation_ms;
    p.stimulus_ms = t.stimulus_ms;
    p.prompt = t.prompt;
    p.resumed = resumed;
    return p;
}

TrialPayload Session::next_trial() {
    std::lock_guard lock(mu_);
    if (next_unserved_ > 0 && !responses_[static_cast<std::size_t>(next_unserved_ - 1)])
        return payload(next_unserved_ - 1, true);
    if (next_unserved_ >= static_cast<int>(schedule_.trials.size())) throw SessionComplete();
    const int index = next_unserved_++;
    log({{"event", "served"}, {"trial_index", index}});
    return payload(index, false);
}

HumanResponse Session::record_response(int trial_index, std::string_view key, double rt_ms) {
    const auto cell = key_to_cell(key);
    if (!cell) throw InvalidKey(std::string(key));
    std::lock_guard lock(mu_);
    if (trial_index < 0 || trial_index >= next_unserved_) throw UnknownTrial(trial_index);
    auto& slot = responses_[static_cast<std::size_t>(trial_index)];
    if (slot) throw DuplicateResponse(trial_index);
    const auto& t = schedule_.trials[static_cast<std::size_t>(trial_index)];
    HumanResponse r;
    r.session_id = id_;
    r.trial_index = trial_index;
    r.key = static_cast<char>(std::toupper(static_cast<unsigned char>(key[0])));
    r.cell = *cell;
    r.rt_ms = rt_ms;
    r.timestamp = utc_timestamp();
    r.correct = *cell == t.entry.ground_truth_cell;
    r.practice = t.practice;
    slot = r;
    auto e = to_json(r);
    e["event"] = "response";
    log(e);
    return r;
}

std::vector<std::optional<HumanResponse>> Session::responses() const {
    std::lock_guard lock(mu_);
    return responses_;
}

int Session::served_count() const {
    std::lock_guard lock(mu_);
    return next_unserved_;
}

SessionStore::SessionStore(std::uint64_t master_seed, std::optional<std::filesystem::path> log_dir,
                           int pool_per_slot)
    : master_seed_(master_seed), log_dir_(std::move(log_dir)), pool_per_slot_(pool_per_slot) {
    if (log_dir_) std::filesystem::create_directories(*log_dir_);
}

const StimulusPool& SessionStore::pool(Family f, bool practice) {
    auto& slot = pools_[{f, practice}];
    if (!slot) {
        slot = std::make_unique<StimulusPool>(
            practice ? build_stimulus_pool(f, practice_pool_seed(master_seed_), 1, "practice")
                     : build_stimulus_pool(f, master_seed_, pool_per_slot_, "pool"));
    }
    return *slot;
}

std::shared_ptr<Session> SessionStore::create(Family family, const std::string& participant) {
    if (participant.empty()) throw std::invalid_argument("participant id is empty");
    std::unique_lock lock(mu_);
    auto schedule = create_session(pool(family, false), pool(family, true), participant,
                                   session_seed(master_seed_, participant + "#" + std::to_string(counter_)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%04d", ++counter_);
    std::string id = buf;
    std::optional<std::filesystem::path> log_file;
    if (log_dir_) log_file = *log_dir_ / (id + ".jsonl");
    auto s = std::make_shared<Session>(id, std::move(schedule), log_file);
    sessions_[id] = s;
    return s;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw UnknownSession(id);
    return it->second;
}

std::vector<std::shared_ptr<Session>> SessionStore::all() const {
    std::shared_lock lock(mu_);
    std::vector<std::shared_ptr<Session>> out;
    for (const auto& [id, s] : sessions_) out.push_back(s);
    return out;
}

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

HumanExport export_human_results(const std::vector<std::shared_ptr<Session>>& sessions) {
    HumanExport ex;
    std::ostringstream trials;
    trials << "session_id,participant,family,condition,version,trial_index,practice,image_id,n_distractors,bin,"
              "target_row,target_col,key,response_row,response_col,correct,rt_ms,timestamp\n";
    std::ostringstream people;
    people << "session_id,participant,family,answered,correct,mean_accuracy,below_chance\n";

    for (const auto& s : sessions) {
        const auto& sch = s->schedule();
        const auto responses = s->responses();
        ParticipantSummary sum;
        sum.participant = sch.participant;
        sum.session_id = s->id();
        sum.family = sch.family;
        for (std::size_t i = 0; i < responses.size(); ++i) {
            if (!responses[i]) continue;
            const auto& r = *responses[i];
            const auto& t = sch.trials[i];
            const auto& task = t.entry.task_condition;
            char rt[32];
            std::snprintf(rt, sizeof rt, "%.3f", r.rt_ms);
            trials << s->id() << ',' << csv_field(sch.participant) << ',' << to_string(task.family) << ','
                   << to_string(task.condition) << ',' << (task.version ? to_string(*task.version, task.family) : "") << ','
                   << i << ',' << (t.practice ? 1 : 0) << ',' << t.entry.image_id << ',' << t.entry.n_distractors
                   << ',' << t.bin << ',' << t.entry.ground_truth_cell.row << ',' << t.entry.ground_truth_cell.col
                   << ',' << r.key << ',' << r.cell.row << ',' << r.cell.col << ',' << (r.correct ? 1 : 0) << ','
                   << rt << ',' << r.timestamp << '\n';
            if (!t.practice) {
                ++sum.answered;
                if (r.correct) ++sum.correct;
            }
        }
        sum.mean_accuracy = sum.answered ? static_cast<double>(sum.correct) / sum.answered : 0.0;
        sum.below_chance = sum.answered > 0 && sum.mean_accuracy < kChanceLevel;
        char acc[32];
        std::snprintf(acc, sizeof acc, "%.6f", sum.mean_accuracy);
        people << sum.session_id << ',' << csv_field(sum.participant) << ',' << to_string(sum.family) << ','
               << sum.answered << ',' << sum.correct << ',' << acc << ',' << (sum.below_chance ? 1 : 0) << '\n';
        ex.participants.push_back(std::move(sum));
    }
    ex.trials_csv = trials.str();
    ex.participants_csv = people.str();
    return ex;
}

} // namespace vsearch::human
