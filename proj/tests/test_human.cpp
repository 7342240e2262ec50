#include "oracles.hpp"

#include "vsearch/human/server.hpp"
#include "vsearch/raster.hpp"

#include <doctest.h>
#include <httplib.h>

#include <fstream>
#include <map>
#include <thread>

using namespace vsearch;
using namespace vsearch::human;

namespace {

const StimulusPool& pool_for(Family f, bool practice) {
    static std::map<std::pair<Family, bool>, StimulusPool> cache;
    auto it = cache.find({f, practice});
    if (it == cache.end())
        it = cache.emplace(std::pair{f, practice},
                           practice ? build_stimulus_pool(f, practice_pool_seed(42), 1, "practice")
                                    : build_stimulus_pool(f, 42, 2, "pool"))
                 .first;
    return it->second;
}

SessionSchedule schedule(Family f, const std::string& who) {
    return create_session(pool_for(f, false), pool_for(f, true), who, session_seed(42, who));
}

} // namespace

TEST_CASE("trial counts per family") {
    CHECK(design_trial_count(Family::CircleSizes) == 144);
    CHECK(design_trial_count(Family::TwoAmongFive) == 144);
    CHECK(design_trial_count(Family::LightPriors) == 192);
    CHECK_THROWS(design_strata(Family::TAmongL));
}

TEST_CASE("schedules satisfy the protocol") {
    for (Family f : {Family::CircleSizes, Family::TwoAmongFive, Family::LightPriors}) {
        const auto s = schedule(f, "p1");
        CHECK(s.practice_count == kPracticeTrials);
        CHECK(s.experimental_count() == design_trial_count(f));
        std::map<std::string, std::array<int, 4>> per_bin;
        std::map<std::string, std::map<std::pair<int, int>, int>> colours;
        std::set<std::string> ids;
        for (const auto& t : s.trials) {
            CHECK(t.fixation_ms == 500);
            CHECK(t.stimulus_ms == (f == Family::TwoAmongFive ? 3000 : 1500));
            CHECK_FALSE(in_exclusion_band(t.entry.target_centre));
            CHECK(t.feedback == t.practice);
            if (t.practice) continue;
            ids.insert(t.entry.image_id);
            const auto& task = t.entry.task_condition;
            std::string cond = std::string(to_string(task.condition)) + (task.version ? std::string(to_string(*task.version, f)) : std::string());
            ++per_bin[cond + "/" + t.bin][static_cast<std::size_t>(cell_index(t.entry.ground_truth_cell))];
            // A one-distractor shape-colour scene shows no distractor in the second colour.
            const bool scc = task.condition == Condition::ShapeColourConjunctive;
            colours[cond][{t.entry.target_colour ? static_cast<int>(*t.entry.target_colour) : -1,
                           !scc && t.entry.distractor_colour ? static_cast<int>(*t.entry.distractor_colour) : -1}]++;
            CHECK(t.entry.n_distractors >= 1);
        }
        CHECK(ids.size() == static_cast<std::size_t>(design_trial_count(f)));
        const int per_cell = f == Family::LightPriors ? 3 : 1;
        for (const auto& [k, cells] : per_bin)
            for (int c : cells) CHECK(c == per_cell);
        for (const auto& [cond, combos] : colours) {
            int lo = 1 << 30, hi = 0;
            for (const auto& [combo, n] : combos) {
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            CHECK(hi - lo <= 1);
        }
        const auto& first = s.trials[static_cast<std::size_t>(s.practice_count)];
        CHECK_FALSE(first.practice);
    }
}

TEST_CASE("practice stimuli are disjoint from experimental ones") {
    const auto s = schedule(Family::CircleSizes, "p2");
    std::set<std::string> practice, main;
    for (const auto& t : s.trials) (t.practice ? practice : main).insert(t.entry.image_id);
    CHECK(practice.size() == 8);
    for (const auto& id : practice) CHECK_FALSE(main.count(id));
}

TEST_CASE("different participants get different orders") {
    const auto a = schedule(Family::LightPriors, "a"), b = schedule(Family::LightPriors, "b"), a2 = schedule(Family::LightPriors, "a");
    std::vector<std::string> ia, ib, ia2;
    for (const auto& t : a.trials) ia.push_back(t.entry.image_id);
    for (const auto& t : b.trials) ib.push_back(t.entry.image_id);
    for (const auto& t : a2.trials) ia2.push_back(t.entry.image_id);
    CHECK(ia != ib);
    CHECK(ia == ia2);
}

TEST_CASE("tiny pools are rejected") {
    StimulusPool empty = pool_for(Family::LightPriors, false);
    empty.candidates.resize(10);
    CHECK_THROWS_AS(create_session(empty, pool_for(Family::LightPriors, true), "x", 1), PoolTooSmall);
}

TEST_CASE("key mapping") {
    CHECK(key_to_cell("Q") == Cell{1, 1});
    CHECK(key_to_cell("p") == Cell{1, 2});
    CHECK(key_to_cell("A") == Cell{2, 1});
    CHECK(key_to_cell("l") == Cell{2, 2});
    CHECK_FALSE(key_to_cell("X"));
    CHECK_FALSE(key_to_cell("QQ"));
}

TEST_CASE("session flow") {
    const auto dir = oracle::temp_dir("sess");
    Session s("s1", schedule(Family::CircleSizes, "p3"), dir / "s1.jsonl");
    CHECK_THROWS_AS(s.record_response(0, "Q", 100), UnknownTrial);
    auto t0 = s.next_trial();
    CHECK(t0.trial_index == 0);
    CHECK(t0.practice);
    CHECK(t0.image_url == "/images/s1/0.png");
    auto again = s.next_trial();
    CHECK(again.trial_index == 0);
    CHECK(again.resumed);
    CHECK_THROWS_AS(s.record_response(0, "Z", 100), InvalidKey);
    s.record_response(0, "Q", 321.5);
    CHECK_THROWS_AS(s.record_response(0, "P", 100), DuplicateResponse);
    CHECK_THROWS_AS(s.record_response(5, "P", 100), UnknownTrial);
    const int total = static_cast<int>(s.schedule().trials.size());
    for (int i = 1; i < total; ++i) {
        const auto t = s.next_trial();
        REQUIRE(t.trial_index == i);
        const auto truth = s.schedule().trials[static_cast<std::size_t>(i)].entry.ground_truth_cell;
        const char* key = truth == Cell{1, 1} ? "Q" : truth == Cell{1, 2} ? "P" : truth == Cell{2, 1} ? "A" : "L";
        CHECK(s.record_response(i, key, 500).correct);
    }
    CHECK_THROWS_AS(s.next_trial(), SessionComplete);

    std::ifstream log(dir / "s1.jsonl");
    int lines = 0;
    std::string line;
    while (std::getline(log, line)) {
        CHECK_NOTHROW((void)nlohmann::json::parse(line));
        ++lines;
    }
    CHECK(lines == 1 + 2 * total);
    std::filesystem::remove_all(dir);
}

TEST_CASE("export flags below-chance participants") {
    CHECK(export_human_results({}).trials_csv.find('\n') == export_human_results({}).trials_csv.size() - 1);
    auto good = std::make_shared<Session>("g", schedule(Family::LightPriors, "good"));
    auto bad = std::make_shared<Session>("b", schedule(Family::LightPriors, "bad"));
    for (auto& s : {good, bad}) {
        for (std::size_t i = 0; i < s->schedule().trials.size(); ++i) {
            const auto t = s->next_trial();
            const auto truth = s->schedule().trials[i].entry.ground_truth_cell;
            const bool answer_right = s == good;
            const Cell pick = answer_right ? truth : Cell{truth.row == 1 ? 2 : 1, truth.col};
            const char* key = pick == Cell{1, 1} ? "Q" : pick == Cell{1, 2} ? "P" : pick == Cell{2, 1} ? "A" : "L";
            s->record_response(t.trial_index, key, 400);
        }
    }
    const auto ex = export_human_results({good, bad});
    REQUIRE(ex.participants.size() == 2);
    CHECK(ex.participants[0].answered == 192);
    CHECK(ex.participants[0].mean_accuracy == 1.0);
    CHECK_FALSE(ex.participants[0].below_chance);
    CHECK(ex.participants[1].mean_accuracy == 0.0);
    CHECK(ex.participants[1].below_chance);
    CHECK(std::count(ex.trials_csv.begin(), ex.trials_csv.end(), '\n') == 1 + 2 * 200);
    const auto again = export_human_results({good, bad});
    CHECK(again.trials_csv == ex.trials_csv);
    CHECK(again.participants_csv == ex.participants_csv);
}

TEST_CASE("twenty percent accuracy is flagged") {
    auto s = std::make_shared<Session>("t", schedule(Family::CircleSizes, "weak"));
    int answered = 0;
    for (std::size_t i = 0; i < s->schedule().trials.size(); ++i) {
        const auto t = s->next_trial();
        const auto truth = s->schedule().trials[i].entry.ground_truth_cell;
        if (t.practice) {
            s->record_response(t.trial_index, "Q", 300);
            continue;
        }
        // Every fifth experimental trial right: 20%.
        const bool right = answered++ % 5 == 0;
        const Cell pick = right ? truth : Cell{truth.row == 1 ? 2 : 1, truth.col};
        const char* key = pick == Cell{1, 1} ? "Q" : pick == Cell{1, 2} ? "P" : pick == Cell{2, 1} ? "A" : "L";
        s->record_response(t.trial_index, key, 300);
    }
    const auto ex = export_human_results({s});
    CHECK(ex.participants[0].mean_accuracy == doctest::Approx(29.0 / 144));
    CHECK(ex.participants[0].below_chance);
}

TEST_CASE("http endpoints") {
    SessionStore store(42, std::nullopt, 1);
    TrialsServer server(store);
    const int port = server.bind_any_port();
    std::thread t([&] { server.listen_after_bind(); });
    httplib::Client cli("127.0.0.1", port);
    for (int i = 0; i < 200 && !cli.Get("/export.csv"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));

    auto res = cli.Post("/sessions", R"({"family":"CircleSizes","participant":"web1"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const auto created = nlohmann::json::parse(res->body);
    const auto id = created["session_id"].get<std::string>();
    CHECK(created["experimental_trials"] == 144);

    res = cli.Get("/sessions/" + id + "/next");
    REQUIRE(res);
    CHECK(res->status == 200);
    const auto trial = nlohmann::json::parse(res->body);
    CHECK(trial["trial_index"] == 0);
    CHECK(trial["fixation_ms"] == 500);
    CHECK(trial["stimulus_ms"] == 1500);
    CHECK(trial["prompt"] == "Find the largest circle");

    res = cli.Get(trial["image_url"].get<std::string>());
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type") == "image/png");
    const std::vector<std::uint8_t> png(res->body.begin(), res->body.end());
    CHECK(decode_png(png).width == 400);

    const auto body = [](int idx, const char* key) {
        return nlohmann::json{{"trial_index", idx}, {"key", key}, {"rt_ms", 812.0}}.dump();
    };
    res = cli.Post("/sessions/" + id + "/responses", body(0, "X"), "application/json");
    CHECK(res->status == 400);
    res = cli.Post("/sessions/" + id + "/responses", body(0, "Q"), "application/json");
    CHECK(res->status == 201);
    CHECK(nlohmann::json::parse(res->body).contains("target_cell"));
    res = cli.Post("/sessions/" + id + "/responses", body(0, "Q"), "application/json");
    CHECK(res->status == 409);
    res = cli.Post("/sessions/" + id + "/responses", body(3, "Q"), "application/json");
    CHECK(res->status == 404);
    res = cli.Get("/sessions/nope/next");
    CHECK(res->status == 404);
    res = cli.Post("/sessions", R"({"family":"Nope","participant":"x"})", "application/json");
    CHECK(res->status == 400);

    res = cli.Get("/export.csv");
    REQUIRE(res);
    CHECK(std::count(res->body.begin(), res->body.end(), '\n') == 2);
    res = cli.Get("/participants.csv");
    CHECK(res->body.find("web1") != std::string::npos);

    server.stop();
    t.join();
}

TEST_CASE("completed sessions answer 410") {
    SessionStore store(42, std::nullopt, 1);
    auto s = store.create(Family::LightPriors, "done");
    for (std::size_t i = 0; i < s->schedule().trials.size(); ++i) s->record_response(s->next_trial().trial_index, "Q", 1);
    TrialsServer server(store);
    const int port = server.bind_any_port();
    std::thread t([&] { server.listen_after_bind(); });
    httplib::Client cli("127.0.0.1", port);
    httplib::Result res;
    for (int i = 0; i < 200 && !(res = cli.Get("/sessions/" + s->id() + "/next")); ++i)
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    REQUIRE(res);
    CHECK(res->status == 410);
    server.stop();
    t.join();
}
