// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "dwv/session.hpp"

namespace httplib {
class Server;
}

namespace dwv {

/// REST front end for SessionService, versioned under /v1:
///
///   GET  /v1/health
///   GET  /v1/registry
///   GET  /v1/census
///   POST /v1/targets                 {"worldview", "session_id"?, "baseline"?}
///   POST /v1/sessions                {"prompt"}
///   GET  /v1/sessions/{id}
///   POST /v1/sessions/{id}/baseline  {"count"?, "seed"?}
///   POST /v1/sessions/{id}/edits     {"worldview", "count"?, "seed"?, "sampler"?}
///   GET  /v1/jobs/{id}
///   GET  /v1/images/{id}
class HttpApi {
public:
    explicit HttpApi(SessionService& service);
    ~HttpApi();

    HttpApi(const HttpApi&) = delete;
    HttpApi& operator=(const HttpApi&) = delete;

    /// Binds (port 0 picks a free port) and serves on a background thread.
    int start(const std::string& host, int port);
    void stop();
    void wait();

private:
    void routes();

    SessionService& service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace dwv
