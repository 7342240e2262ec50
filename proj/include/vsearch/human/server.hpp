#pragma once

#include "vsearch/human/session.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace vsearch::human {

/// JSON API for the browser client:
///   POST /sessions                     {"family", "participant"} -> session + counts
///   GET  /sessions/{id}/next           -> TrialPayload | 410 SessionComplete
///   POST /sessions/{id}/responses      {"trial_index", "key", "rt_ms"} -> HumanResponse
///   GET  /images/{id}/{index}.png      stimulus image
///   GET  /export.csv                   per-trial CSV
///   GET  /participants.csv             per-participant accuracy and flags
/// Errors are {"error": <name>, "message": <text>} with a 4xx status.
class TrialsServer {
  public:
    explicit TrialsServer(SessionStore& store, std::optional<std::filesystem::path> static_dir = {});
    ~TrialsServer();
    TrialsServer(const TrialsServer&) = delete;
    TrialsServer& operator=(const TrialsServer&) = delete;

    /// Binds to an ephemeral port and returns it.
    int bind_any_port(const std::string& host = "127.0.0.1");
    bool bind(const std::string& host, int port);
    /// Blocks serving requests until stop().
    bool listen_after_bind();
    void stop();

  private:
    void install_routes();

    SessionStore& store_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace vsearch::human
