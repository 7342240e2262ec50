#include "vsearch/human/server.hpp"

#include "vsearch/raster.hpp"

#include <httplib.h>
#include <json.hpp>

namespace vsearch::human {

namespace {

void send_error(httplib::Response& res, int status, std::string_view name, std::string_view message) {
    res.status = status;
    res.set_content(nlohmann::json{{"error", name}, {"message", message}}.dump(), "application/json");
}

void send_json(httplib::Response& res, const nlohmann::json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
}

// Maps library exceptions onto HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const UnknownSession& e) {
        send_error(res, 404, "UnknownSession", e.what());
    } catch (const UnknownTrial& e) {
        send_error(res, 404, "UnknownTrial", e.what());
    } catch (const DuplicateResponse& e) {
        send_error(res, 409, "DuplicateResponse", e.what());
    } catch (const InvalidKey& e) {
        send_error(res, 400, "InvalidKey", e.what());
    } catch (const SessionComplete& e) {
        send_error(res, 410, "SessionComplete", e.what());
    } catch (const PoolTooSmall& e) {
        send_error(res, 500, "PoolTooSmall", e.what());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, "BadRequest", e.what());
    } catch (const std::invalid_argument& e) {
        send_error(res, 400, "BadRequest", e.what());
    }
}

} // namespace

TrialsServer::TrialsServer(SessionStore& store, std::optional<std::filesystem::path> static_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
    install_routes();
    if (static_dir) server_->set_mount_point("/", static_dir->string());
}

TrialsServer::~TrialsServer() { stop(); }

void TrialsServer::install_routes() {
    auto& srv = *server_;

    srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto body = nlohmann::json::parse(req.body);
            const auto family = family_from_string(body.at("family").get<std::string>());
            auto s = store_.create(family, body.at("participant").get<std::string>());
            const auto& sch = s->schedule();
            send_json(res,
                      {{"session_id", s->id()},
                       {"participant", sch.participant},
                       {"family", to_string(sch.family)},
                       {"practice_trials", sch.practice_count},
                       {"experimental_trials", sch.experimental_count()},
                       {"keys", {{"Q", "Cell (1,1)"}, {"P", "Cell (1,2)"}, {"A", "Cell (2,1)"}, {"L", "Cell (2,2)"}}}},
                      201);
        });
    });

    srv.Get(R"(/sessions/([^/]+)/next)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, to_json(store_.get(req.matches[1].str())->next_trial())); });
    });

    srv.Post(R"(/sessions/([^/]+)/responses)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto s = store_.get(req.matches[1].str());
            const auto body = nlohmann::json::parse(req.body);
            const auto r = s->record_response(body.at("trial_index").get<int>(), body.at("key").get<std::string>(),
                                              body.value("rt_ms", 0.0));
            auto j = to_json(r);
            if (s->schedule().trials[static_cast<std::size_t>(r.trial_index)].feedback) {
                const auto gt = s->schedule().trials[static_cast<std::size_t>(r.trial_index)].entry.ground_truth_cell;
                j["target_cell"] = {gt.row, gt.col};
            } else {
                j.erase("correct");
            }
            send_json(res, j, 201);
        });
    });

    srv.Get(R"(/images/([^/]+)/(\d+)\.png)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto s = store_.get(req.matches[1].str());
            const auto index = std::stoul(req.matches[2].str());
            const auto& trials = s->schedule().trials;
            if (index >= trials.size()) throw UnknownTrial(static_cast<int>(index));
            const auto png = encode_png(render_scene(trials[index].scene));
            res.set_content(std::string(png.begin(), png.end()), "image/png");
        });
    });

    srv.Get("/export.csv", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(export_human_results(store_.all()).trials_csv, "text/csv");
    });

    srv.Get("/participants.csv", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(export_human_results(store_.all()).participants_csv, "text/csv");
    });
}

int TrialsServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool TrialsServer::bind(const std::string& host, int port) { return server_->bind_to_port(host, port); }

bool TrialsServer::listen_after_bind() { return server_->listen_after_bind(); }

void TrialsServer::stop() {
    if (server_) server_->stop();
}

} // namespace vsearch::human
