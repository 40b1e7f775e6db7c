// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/dwv.h"

#include <cstring>
#include <memory>
#include <string>

#include "dwv/audit.hpp"
#include "dwv/http_api.hpp"
#include "dwv/replay.hpp"
#include "dwv/session.hpp"
#include "dwv/wire.hpp"

struct dwv_context {
    dwv::Config config;
};

struct dwv_service {
    std::unique_ptr<dwv::SessionService> service;
    std::unique_ptr<dwv::HttpApi> api;
    int port = 0;
};

struct dwv_adapter {
    std::unique_ptr<dwv::AdapterServer> server;
    int port = 0;
};

namespace {

thread_local std::string g_last_error;

dwv_status status_for(dwv::ErrorCode code) {
    using dwv::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return DWV_E_INVALID_ARGUMENT;
        case ErrorCode::UnknownCategory: return DWV_E_UNKNOWN_CATEGORY;
        case ErrorCode::AllZero: return DWV_E_ALL_ZERO;
        case ErrorCode::NegativeWeight: return DWV_E_NEGATIVE_WEIGHT;
        case ErrorCode::EmptyInput: return DWV_E_EMPTY_INPUT;
        case ErrorCode::AxisMismatch: return DWV_E_AXIS_MISMATCH;
        case ErrorCode::EmptySelection: return DWV_E_EMPTY_SELECTION;
        case ErrorCode::OutOfRange: return DWV_E_OUT_OF_RANGE;
        case ErrorCode::MissingBaseline: return DWV_E_MISSING_BASELINE;
        case ErrorCode::UnknownCensusTable: return DWV_E_UNKNOWN_CENSUS_TABLE;
        case ErrorCode::InvalidWorldview: return DWV_E_INVALID_WORLDVIEW;
        case ErrorCode::BackendUnavailable: return DWV_E_BACKEND_UNAVAILABLE;
        case ErrorCode::InvalidRequest: return DWV_E_INVALID_REQUEST;
        case ErrorCode::PayloadUnreadable: return DWV_E_PAYLOAD_UNREADABLE;
        case ErrorCode::NoFaceDetected: return DWV_E_NO_FACE_DETECTED;
        case ErrorCode::EmptyPrompt: return DWV_E_EMPTY_PROMPT;
        case ErrorCode::UnknownSession: return DWV_E_UNKNOWN_SESSION;
        case ErrorCode::UnknownJob: return DWV_E_UNKNOWN_JOB;
        case ErrorCode::UnknownImage: return DWV_E_UNKNOWN_IMAGE;
        case ErrorCode::JobAlreadyRunning: return DWV_E_JOB_ALREADY_RUNNING;
        case ErrorCode::ConfigError: return DWV_E_CONFIG;
        case ErrorCode::IoError: return DWV_E_IO;
    }
    return DWV_E_INTERNAL;
}

template <typename F>
dwv_status call(F&& f) {
    g_last_error.clear();
    try {
        f();
        return DWV_OK;
    } catch (const dwv::Error& e) {
        g_last_error = e.what();
        return status_for(e.code());
    } catch (const dwv::Json::exception& e) {
        g_last_error = e.what();
        return DWV_E_INVALID_REQUEST;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DWV_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DWV_E_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool condition, const char* what) {
    if (!condition) throw dwv::Error(dwv::ErrorCode::InvalidArgument, what);
}

dwv::WorldviewSpec parse_worldview_text(const char* text) {
    std::string s(text);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '{') return dwv::worldview_from_json(dwv::Json::parse(s));
    return dwv::parse_worldview(s);
}

}  // namespace

extern "C" {

const char* dwv_version(void) { return "0.3.0"; }

const char* dwv_status_name(dwv_status status) {
    switch (status) {
        case DWV_OK: return "OK";
        case DWV_E_INTERNAL: return "Internal";
        default: break;
    }
    for (int c = 0; c <= static_cast<int>(dwv::ErrorCode::IoError); ++c) {
        const auto code = static_cast<dwv::ErrorCode>(c);
        if (status_for(code) == status) return dwv::error_code_name(code).data();
    }
    return "Unknown";
}

const char* dwv_last_error_message(void) { return g_last_error.c_str(); }

void dwv_string_free(char* s) { std::free(s); }

dwv_status dwv_context_create(const char* config_path, int apply_env, dwv_context** out) {
    return call([&] {
        require(out != nullptr, "out is NULL");
        auto ctx = std::make_unique<dwv_context>();
        ctx->config = config_path ? dwv::Config::load(config_path) : dwv::Config::defaults();
        if (apply_env) ctx->config.apply_environment();
        *out = ctx.release();
    });
}

void dwv_context_destroy(dwv_context* ctx) { delete ctx; }

dwv_status dwv_context_set_store(dwv_context* ctx, const char* path) {
    return call([&] {
        require(ctx && path && *path, "context and path are required");
        ctx->config.service.store = path;
    });
}

dwv_status dwv_registry_json(const dwv_context* ctx, char** out_json) {
    return call([&] {
        require(ctx && out_json, "context and out_json are required");
        *out_json = dup(dwv::to_json(ctx->config.registry).dump());
    });
}

dwv_status dwv_census_json(const dwv_context* ctx, char** out_json) {
    return call([&] {
        require(ctx && out_json, "context and out_json are required");
        dwv::Json tables = dwv::Json::array();
        for (const auto& [id, table] : ctx->config.census.tables()) tables.push_back(dwv::to_json(table));
        *out_json = dup(dwv::Json{{"default", ctx->config.census.default_id()}, {"tables", tables}}.dump());
    });
}

dwv_status dwv_target_json(const dwv_context* ctx, const char* worldview, const char* baseline_json,
                           char** out_json) {
    return call([&] {
        require(ctx && worldview && out_json, "context, worldview and out_json are required");
        const auto spec = parse_worldview_text(worldview);
        std::optional<dwv::DistributionSet> baseline;
        if (baseline_json) baseline = dwv::distribution_set_from_json(dwv::Json::parse(baseline_json));
        spec.validate();
        *out_json = dup(dwv::to_json(dwv::target_for(spec, baseline, ctx->config.census)).dump());
    });
}

dwv_status dwv_sample_triples_json(const dwv_context* ctx, const char* target_json, size_t n, uint64_t seed,
                                   const char* sampler, char** out_json) {
    return call([&] {
        require(ctx && target_json && out_json, "context, target_json and out_json are required");
        const auto target = dwv::distribution_set_from_json(dwv::Json::parse(target_json));
        const auto mode = dwv::parse_sampler(sampler ? sampler : "stochastic");
        dwv::Rng rng(seed);
        const auto triples = dwv::draw_triples(mode, target, n, rng, ctx->config.registry, ctx->config.templates);
        dwv::Json out = dwv::Json::array();
        for (const auto& t : triples) out.push_back(dwv::to_json(t));
        *out_json = dup(out.dump());
    });
}

dwv_status dwv_audit_run(const dwv_context* ctx, const dwv_audit_options* options, char** out_report, int* all_ok) {
    return call([&] {
        require(ctx && options && out_report, "context, options and out_report are required");
        require(options->prompts_path != nullptr, "prompts_path is required");
        require(options->worldview_count == 0 || options->worldviews != nullptr, "worldviews is NULL");
        dwv::AuditOptions opts;
        opts.prompts = dwv::read_prompts(options->prompts_path);
        for (size_t i = 0; i < options->worldview_count; ++i) {
            opts.worldviews.push_back(parse_worldview_text(options->worldviews[i]));
        }
        opts.count = options->count;
        opts.seed = options->seed;
        opts.sampler = dwv::parse_sampler(options->sampler ? options->sampler : "stochastic");
        const auto format = dwv::parse_report_format(options->format ? options->format : "table");

        auto config = std::make_shared<const dwv::Config>(ctx->config);
        dwv::Pipeline pipeline(config, dwv::make_backends(*config), dwv::ImageStore(config->service.store));
        const auto report = dwv::run_audit(opts, pipeline);
        *out_report = dup(dwv::render_report(report, format));
        if (all_ok) *all_ok = report.all_ok() ? 1 : 0;
    });
}

dwv_status dwv_replay_session(const dwv_context* ctx, const char* session_id, char** out_json, int* identical) {
    return call([&] {
        require(ctx && session_id && out_json, "context, session_id and out_json are required");
        const auto sessions = dwv::SessionLog::load(ctx->config.service.store / "sessions.log");
        auto it = sessions.find(session_id);
        if (it == sessions.end()) {
            throw dwv::Error(dwv::ErrorCode::UnknownSession, std::string("no session '") + session_id + "'");
        }
        auto config = std::make_shared<const dwv::Config>(ctx->config);
        dwv::Pipeline pipeline(config, dwv::make_backends(*config), dwv::ImageStore(config->service.store));
        const auto report = dwv::replay_session(it->second, pipeline);
        *out_json = dup(dwv::to_json(report).dump(2));
        if (identical) *identical = report.identical() ? 1 : 0;
    });
}

dwv_status dwv_service_start(const dwv_context* ctx, const char* host, int port, dwv_service** out) {
    return call([&] {
        require(ctx && out, "context and out are required");
        auto svc = std::make_unique<dwv_service>();
        svc->service = std::make_unique<dwv::SessionService>(ctx->config);
        svc->api = std::make_unique<dwv::HttpApi>(*svc->service);
        svc->port = svc->api->start(host ? host : ctx->config.service.host, port < 0 ? ctx->config.service.port : port);
        *out = svc.release();
    });
}

int dwv_service_port(const dwv_service* service) { return service ? service->port : -1; }

void dwv_service_stop(dwv_service* service) {
    if (service && service->api) service->api->stop();
}

void dwv_service_destroy(dwv_service* service) {
    if (!service) return;
    dwv_service_stop(service);
    delete service;
}

dwv_status dwv_adapter_start(const dwv_context* ctx, const char* host, int port, dwv_adapter** out) {
    return call([&] {
        require(ctx && out, "context and out are required");
        const auto& c = ctx->config;
        auto adapter = std::make_unique<dwv_adapter>();
        adapter->server = std::make_unique<dwv::AdapterServer>(
            std::make_shared<dwv::SyntheticGenerator>(c.synthetic.profiles, c.synthetic.default_profile),
            std::make_shared<dwv::SyntheticClassifier>(c.synthetic.classifier_noise, c.synthetic.classifier_seed));
        adapter->port = adapter->server->start(host ? host : c.service.host, port < 0 ? 0 : port);
        *out = adapter.release();
    });
}

int dwv_adapter_port(const dwv_adapter* adapter) { return adapter ? adapter->port : -1; }

void dwv_adapter_destroy(dwv_adapter* adapter) {
    if (!adapter) return;
    adapter->server->stop();
    delete adapter;
}

}  // extern "C"
