// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Adapter wire protocol. A model host (diffusion model with semantic
// guidance, face-attribute classifier) implements three endpoints:
//
//   GET  /v1/adapter/describe
//        -> {"generator": {"id", "single_flight"},
//            "classifier": {"id", "axes", "face_policy", "noise", "single_flight"}}
//   POST /v1/adapter/generate   body: GenerationRequest JSON
//        -> {"backend": id, "images": [{"record": ImageRecord, "payload_b64": ...}]}
//   POST /v1/adapter/classify   body: {"image": ImageRecord, "payload_b64": ...}
//        -> ClassifiedImage JSON
//
// Errors use {"error": {"code": <ErrorCode name>, "message": ...}} with the
// HTTP status from http_status_for().

#include <memory>
#include <string>
#include <thread>

#include "dwv/classifier.hpp"
#include "dwv/codec.hpp"
#include "dwv/generation.hpp"

namespace httplib {
class Server;
}

namespace dwv {

int http_status_for(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;
Json error_body(ErrorCode code, std::string_view message);

/// Splits "http://host:port/prefix" into the client base and the path prefix.
struct Endpoint {
    std::string base;
    std::string prefix;
};
Endpoint parse_endpoint(std::string_view url);

class RemoteGenerator final : public Generator {
public:
    RemoteGenerator(std::string url, int timeout_seconds, bool single_flight);

    BackendDescriptor descriptor() const override;
    std::vector<GeneratedImage> generate(const GenerationRequest& req) const override;

private:
    std::string url_;
    Endpoint endpoint_;
    int timeout_seconds_;
    bool single_flight_;
};

class RemoteClassifier final : public Classifier {
public:
    RemoteClassifier(std::string url, int timeout_seconds, bool single_flight);

    ClassifierDescriptor descriptor() const override;
    ClassifiedImage classify(const ImageRecord& image, std::string_view payload) const override;

private:
    std::string url_;
    Endpoint endpoint_;
    int timeout_seconds_;
    bool single_flight_;
};

/// Serves a generator/classifier pair over the adapter protocol. Used to host
/// the synthetic pair out of process and as the protocol reference.
class AdapterServer {
public:
    AdapterServer(std::shared_ptr<const Generator> generator, std::shared_ptr<const Classifier> classifier);
    ~AdapterServer();

    AdapterServer(const AdapterServer&) = delete;
    AdapterServer& operator=(const AdapterServer&) = delete;

    /// Binds (port 0 picks a free port), starts serving on a background
    /// thread and returns the bound port.
    int start(const std::string& host, int port);
    void stop();
    void wait();

private:
    std::shared_ptr<const Generator> generator_;
    std::shared_ptr<const Classifier> classifier_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace dwv
