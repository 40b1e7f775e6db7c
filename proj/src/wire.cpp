// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/wire.hpp"

#include "dwv/digest.hpp"
#include "dwv/image_store.hpp"
#include "httplib.h"

namespace dwv {

namespace {

constexpr std::array<ErrorCode, 22> kAllCodes = {
    ErrorCode::InvalidArgument,  ErrorCode::UnknownCategory,    ErrorCode::AllZero,
    ErrorCode::NegativeWeight,   ErrorCode::EmptyInput,         ErrorCode::AxisMismatch,
    ErrorCode::EmptySelection,   ErrorCode::OutOfRange,         ErrorCode::MissingBaseline,
    ErrorCode::UnknownCensusTable, ErrorCode::InvalidWorldview, ErrorCode::BackendUnavailable,
    ErrorCode::InvalidRequest,   ErrorCode::PayloadUnreadable,  ErrorCode::NoFaceDetected,
    ErrorCode::EmptyPrompt,      ErrorCode::UnknownSession,     ErrorCode::UnknownJob,
    ErrorCode::UnknownImage,     ErrorCode::JobAlreadyRunning,  ErrorCode::ConfigError,
    ErrorCode::IoError,
};

std::unique_ptr<httplib::Client> make_client(const Endpoint& endpoint, int timeout_seconds) {
    auto client = std::make_unique<httplib::Client>(endpoint.base);
    client->set_connection_timeout(10);
    client->set_read_timeout(timeout_seconds);
    client->set_write_timeout(timeout_seconds);
    return client;
}

/// Turns a transport failure or error response into an Error.
Json expect_ok(const httplib::Result& res, const std::string& what) {
    if (!res) {
        throw Error(ErrorCode::BackendUnavailable, what + ": " + httplib::to_string(res.error()));
    }
    Json body;
    try {
        body = Json::parse(res->body);
    } catch (const Json::exception&) {
        throw Error(ErrorCode::BackendUnavailable, what + ": HTTP " + std::to_string(res->status) + " with non-JSON body");
    }
    if (res->status >= 200 && res->status < 300) return body;
    ErrorCode code = ErrorCode::BackendUnavailable;
    std::string message = "HTTP " + std::to_string(res->status);
    if (body.contains("error")) {
        if (auto parsed = parse_error_code(body["error"].value("code", std::string()))) code = *parsed;
        message = body["error"].value("message", message);
    }
    throw Error(code, what + ": " + message);
}

void reply_error(httplib::Response& res, ErrorCode code, std::string_view message) {
    res.status = http_status_for(code);
    res.set_content(error_body(code, message).dump(), "application/json");
}

template <typename F>
void handle(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        reply_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
        reply_error(res, ErrorCode::InvalidRequest, e.what());
    } catch (const std::exception& e) {
        reply_error(res, ErrorCode::BackendUnavailable, e.what());
    }
}

}  // namespace

int http_status_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnknownSession:
        case ErrorCode::UnknownJob:
        case ErrorCode::UnknownImage:
        case ErrorCode::UnknownCensusTable:
            return 404;
        case ErrorCode::JobAlreadyRunning:
        case ErrorCode::MissingBaseline:
            return 409;
        case ErrorCode::PayloadUnreadable:
        case ErrorCode::NoFaceDetected:
            return 422;
        case ErrorCode::BackendUnavailable:
            return 503;
        case ErrorCode::IoError:
        case ErrorCode::ConfigError:
            return 500;
        default:
            return 400;
    }
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
    for (ErrorCode code : kAllCodes) {
        if (error_code_name(code) == name) return code;
    }
    return std::nullopt;
}

Json error_body(ErrorCode code, std::string_view message) {
    return Json{{"error", {{"code", error_code_name(code)}, {"message", message}}}};
}

Endpoint parse_endpoint(std::string_view url) {
    const std::size_t scheme = url.find("://");
    if (scheme == std::string_view::npos) throw Error(ErrorCode::ConfigError, "backend URL needs a scheme: " + std::string(url));
    const std::size_t slash = url.find('/', scheme + 3);
    Endpoint e;
    e.base = std::string(url.substr(0, slash));
    if (slash != std::string_view::npos) {
        e.prefix = std::string(url.substr(slash));
        while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    }
    return e;
}

// ---------------------------------------------------------------------------
// Clients

RemoteGenerator::RemoteGenerator(std::string url, int timeout_seconds, bool single_flight)
    : url_(std::move(url)), endpoint_(parse_endpoint(url_)), timeout_seconds_(timeout_seconds),
      single_flight_(single_flight) {}

BackendDescriptor RemoteGenerator::descriptor() const { return {"remote:" + url_, single_flight_}; }

std::vector<GeneratedImage> RemoteGenerator::generate(const GenerationRequest& req) const {
    req.validate();
    auto client = make_client(endpoint_, timeout_seconds_);
    const Json body = expect_ok(client->Post(endpoint_.prefix + "/v1/adapter/generate", to_json(req).dump(),
                                             "application/json"),
                                "generator " + url_);
    try {
        const auto& images = body.at("images");
        if (images.size() != req.count) {
            throw Error(ErrorCode::BackendUnavailable, "generator returned " + std::to_string(images.size()) +
                                                           " images for a request of " + std::to_string(req.count));
        }
        std::vector<GeneratedImage> out;
        for (std::size_t i = 0; i < images.size(); ++i) {
            GeneratedImage image;
            image.record = image_record_from_json(images[i].at("record"));
            image.payload = base64_decode(images[i].at("payload_b64").get<std::string>());
            image.record.id = sha256_hex(image.payload);
            if (image.record.media_type.empty()) image.record.media_type = sniff_media_type(image.payload);
            image.record.backend = body.value("backend", descriptor().id);
            if (req.triples) image.record.applied_triple = (*req.triples)[i];
            out.push_back(std::move(image));
        }
        return out;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::BackendUnavailable, "generator " + url_ + " sent a malformed response: " + e.what());
    }
}

RemoteClassifier::RemoteClassifier(std::string url, int timeout_seconds, bool single_flight)
    : url_(std::move(url)), endpoint_(parse_endpoint(url_)), timeout_seconds_(timeout_seconds),
      single_flight_(single_flight) {}

ClassifierDescriptor RemoteClassifier::descriptor() const {
    ClassifierDescriptor d;
    d.id = "remote:" + url_;
    d.single_flight = single_flight_;
    return d;
}

ClassifiedImage RemoteClassifier::classify(const ImageRecord& image, std::string_view payload) const {
    auto client = make_client(endpoint_, timeout_seconds_);
    const Json request{{"image", to_json(image)}, {"payload_b64", base64_encode(payload)}};
    const Json body = expect_ok(client->Post(endpoint_.prefix + "/v1/adapter/classify", request.dump(),
                                             "application/json"),
                                "classifier " + url_);
    try {
        ClassifiedImage out = classified_image_from_json(body);
        out.image_id = image.id;
        return out;
    } catch (const Error& e) {
        throw Error(ErrorCode::BackendUnavailable, "classifier " + url_ + " sent a malformed response: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Server

AdapterServer::AdapterServer(std::shared_ptr<const Generator> generator, std::shared_ptr<const Classifier> classifier)
    : generator_(std::move(generator)), classifier_(std::move(classifier)),
      server_(std::make_unique<httplib::Server>()) {
    server_->Get("/v1/adapter/describe", [this](const httplib::Request&, httplib::Response& res) {
        handle(res, [&] {
            const auto g = generator_->descriptor();
            const auto c = classifier_->descriptor();
            Json axes = Json::array();
            for (Axis a : c.axes) axes.push_back(axis_name(a));
            const Json body{{"generator", {{"id", g.id}, {"single_flight", g.single_flight}}},
                            {"classifier",
                             {{"id", c.id},
                              {"axes", axes},
                              {"face_policy", c.face_policy},
                              {"noise", c.noise},
                              {"single_flight", c.single_flight}}}};
            res.set_content(body.dump(), "application/json");
        });
    });
    server_->Post("/v1/adapter/generate", [this](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] {
            const GenerationRequest request = generation_request_from_json(Json::parse(req.body));
            Json images = Json::array();
            for (const auto& image : generator_->generate(request)) {
                images.push_back(Json{{"record", to_json(image.record)}, {"payload_b64", base64_encode(image.payload)}});
            }
            res.set_content(Json{{"backend", generator_->descriptor().id}, {"images", std::move(images)}}.dump(),
                            "application/json");
        });
    });
    server_->Post("/v1/adapter/classify", [this](const httplib::Request& req, httplib::Response& res) {
        handle(res, [&] {
            const Json body = Json::parse(req.body);
            const ImageRecord image = image_record_from_json(body.at("image"));
            const std::string payload = base64_decode(body.at("payload_b64").get<std::string>());
            res.set_content(to_json(classifier_->classify(image, payload)).dump(), "application/json");
        });
    });
}

AdapterServer::~AdapterServer() { stop(); }

int AdapterServer::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = server_->bind_to_any_port(host);
    } else if (!server_->bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind adapter server to " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

void AdapterServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

void AdapterServer::wait() {
    if (thread_.joinable()) thread_.join();
}

}  // namespace dwv
