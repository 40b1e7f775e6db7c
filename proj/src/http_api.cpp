// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/http_api.hpp"

#include "dwv/wire.hpp"
#include "httplib.h"

namespace dwv {

namespace {

void send_json(httplib::Response& res, const Json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, std::string_view message) {
    send_json(res, error_body(code, message), http_status_for(code));
}

template <typename F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        send_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
        send_error(res, ErrorCode::InvalidRequest, e.what());
    } catch (const std::exception& e) {
        send_error(res, ErrorCode::IoError, e.what());
    }
}

Json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    try {
        Json body = Json::parse(req.body);
        if (!body.is_object()) throw Error(ErrorCode::InvalidRequest, "request body must be a JSON object");
        return body;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("request body is not JSON: ") + e.what());
    }
}

}  // namespace

HttpApi::HttpApi(SessionService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
    routes();
}

HttpApi::~HttpApi() { stop(); }

void HttpApi::routes() {
    auto& s = *server_;

    s.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, Json{{"status", "ok"}}); });

    s.Get("/v1/registry", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { send_json(res, to_json(service_.config().registry)); });
    });

    s.Get("/v1/census", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] {
            const auto& census = service_.config().census;
            Json tables = Json::array();
            for (const auto& [id, table] : census.tables()) tables.push_back(to_json(table));
            send_json(res, Json{{"default", census.default_id()}, {"tables", std::move(tables)}});
        });
    });

    s.Post("/v1/targets", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            if (!body.contains("worldview")) throw Error(ErrorCode::InvalidWorldview, "missing worldview");
            const WorldviewSpec spec = worldview_from_json(body.at("worldview"));
            std::optional<std::string> session_id;
            if (body.contains("session_id")) session_id = body.at("session_id").get<std::string>();
            std::optional<DistributionSet> baseline;
            if (body.contains("baseline") && !body.at("baseline").is_null()) {
                baseline = distribution_set_from_json(body.at("baseline"));
            }
            send_json(res, Json{{"worldview", to_json(spec)},
                                {"target", to_json(service_.compute_target(spec, session_id, baseline))}});
        });
    });

    s.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            send_json(res, to_json(service_.create_session(body.value("prompt", std::string()))), 201);
        });
    });

    s.Get(R"(/v1/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, to_json(service_.get_session(req.matches[1]))); });
    });

    s.Post(R"(/v1/sessions/([0-9a-f]+)/baseline)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            const auto job = service_.submit_baseline(req.matches[1], body.value("count", kDefaultImageCount),
                                                      body.value("seed", std::uint64_t{0}));
            send_json(res, to_json(job), 202);
        });
    });

    s.Post(R"(/v1/sessions/([0-9a-f]+)/edits)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            if (!body.contains("worldview")) throw Error(ErrorCode::InvalidWorldview, "missing worldview");
            EditSubmission submission;
            try {
                submission.worldview = worldview_from_json(body.at("worldview"));
            } catch (const Error& e) {
                throw Error(ErrorCode::InvalidWorldview, e.what());
            }
            submission.count = body.value("count", kDefaultImageCount);
            if (body.contains("seed") && !body.at("seed").is_null()) submission.seed = body.at("seed").get<std::uint64_t>();
            submission.sampler = parse_sampler(body.value("sampler", std::string("stochastic")));
            send_json(res, to_json(service_.submit_edit(req.matches[1], submission)), 202);
        });
    });

    s.Get(R"(/v1/jobs/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, to_json(service_.get_job(req.matches[1]))); });
    });

    s.Get(R"(/v1/images/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto [payload, media] = service_.get_image(req.matches[1]);
            res.set_content(std::move(payload), media);
        });
    });

    s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty() && res.status == 404) {
            send_json(res, error_body(ErrorCode::InvalidRequest, "no such endpoint"), 404);
        }
    });
}

int HttpApi::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = server_->bind_to_any_port(host);
    } else if (!server_->bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind service to " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

void HttpApi::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

void HttpApi::wait() {
    if (thread_.joinable()) thread_.join();
}

}  // namespace dwv
