// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to libdwv through the C API only.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dwv/dwv.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRowFailures = 1;

struct ContextDeleter {
    void operator()(dwv_context* c) const { dwv_context_destroy(c); }
};
using ContextPtr = std::unique_ptr<dwv_context, ContextDeleter>;

struct CString {
    char* p = nullptr;
    ~CString() { dwv_string_free(p); }
};

int report_failure(dwv_status status) {
    std::cerr << "dwv: " << dwv_status_name(status) << ": " << dwv_last_error_message() << '\n';
    return status == DWV_E_INVALID_ARGUMENT || status == DWV_E_INVALID_WORLDVIEW || status == DWV_E_CONFIG
               ? kExitUsage
               : kExitRowFailures;
}

int open_context(const std::string& config, bool apply_env, ContextPtr& out) {
    dwv_context* raw = nullptr;
    const dwv_status status = dwv_context_create(config.empty() ? nullptr : config.c_str(), apply_env ? 1 : 0, &raw);
    if (status != DWV_OK) return report_failure(status);
    out.reset(raw);
    return 0;
}

bool write_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

/// Blocks SIGINT/SIGTERM so every thread inherits the mask, then waits for one.
struct SignalWaiter {
    sigset_t set{};
    SignalWaiter() {
        sigemptyset(&set);
        sigaddset(&set, SIGINT);
        sigaddset(&set, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &set, nullptr);
    }
    void wait() const {
        int sig = 0;
        sigwait(&set, &sig);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dwv: demographic worldview auditing and editing for text-to-image models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dwv_version()));

    std::string config;
    std::string store;

    // audit
    auto* audit = app.add_subcommand("audit", "Audit prompts against worldviews and report divergences");
    std::string prompts;
    std::vector<std::string> worldviews;
    std::size_t count = 5;
    std::uint64_t seed = 0;
    std::string format = "table";
    std::string sampler = "stochastic";
    std::string out_path;
    audit->add_option("--prompts", prompts, "File with one prompt per line")->required();
    audit->add_option("--worldview", worldviews,
                      "Worldview spec: parity | census[:<table>] | absolute:gender=..;race=..;age=.. | relative:t=<0..1>")
        ->required();
    audit->add_option("--count", count, "Images per generation")->check(CLI::PositiveNumber);
    audit->add_option("--seed", seed, "Generation seed");
    audit->add_option("--config", config, "Configuration file (YAML)");
    audit->add_option("--store", store, "Image store directory (overrides config)");
    audit->add_option("--format", format, "Report format")->check(CLI::IsMember({"table", "structured"}));
    audit->add_option("--sampler", sampler, "Triple sampler")->check(CLI::IsMember({"stochastic", "quota"}));
    audit->add_option("--out", out_path, "Write the report here instead of stdout");

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
    std::string host;
    int port = -1;
    serve->add_option("--config", config, "Configuration file (YAML)");
    serve->add_option("--host", host, "Bind address (default from config)");
    serve->add_option("--port", port, "Port (default from config or DWV_PORT)");

    // adapter
    auto* adapter = app.add_subcommand("adapter", "Serve the synthetic backends over the adapter wire protocol");
    adapter->add_option("--config", config, "Configuration file (YAML)");
    adapter->add_option("--host", host, "Bind address");
    adapter->add_option("--port", port, "Port (0 picks a free one)");

    // target
    auto* target = app.add_subcommand("target", "Print the target distributions of a worldview");
    std::string worldview;
    std::string baseline_path;
    target->add_option("--worldview", worldview, "Worldview spec")->required();
    target->add_option("--baseline", baseline_path, "Baseline distribution set JSON (relative mode)");
    target->add_option("--config", config, "Configuration file (YAML)");

    // registry / census
    auto* registry = app.add_subcommand("registry", "Print the category registry as JSON");
    registry->add_option("--config", config, "Configuration file (YAML)");
    auto* census = app.add_subcommand("census", "Print the configured census tables as JSON");
    census->add_option("--config", config, "Configuration file (YAML)");

    // replay
    auto* replay = app.add_subcommand("replay", "Re-run a recorded session and check it reproduces bit for bit");
    std::string session_id;
    replay->add_option("--session", session_id, "Session id")->required();
    replay->add_option("--config", config, "Configuration file (YAML)");
    replay->add_option("--store", store, "Store directory holding sessions.log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    ContextPtr ctx;
    if (int rc = open_context(config, serve->parsed() || adapter->parsed(), ctx)) return rc;
    if (!store.empty()) {
        if (dwv_status st = dwv_context_set_store(ctx.get(), store.c_str()); st != DWV_OK) return report_failure(st);
    }

    if (audit->parsed()) {
        std::vector<const char*> specs;
        for (const auto& w : worldviews) specs.push_back(w.c_str());
        dwv_audit_options options{prompts.c_str(), specs.data(), specs.size(), count, seed,
                                  sampler.c_str(), format.c_str()};
        CString report;
        int all_ok = 0;
        if (dwv_status st = dwv_audit_run(ctx.get(), &options, &report.p, &all_ok); st != DWV_OK) {
            return report_failure(st);
        }
        if (!write_output(out_path, report.p)) {
            std::cerr << "dwv: cannot write " << out_path << '\n';
            return kExitRowFailures;
        }
        return all_ok ? 0 : kExitRowFailures;
    }

    if (serve->parsed() || adapter->parsed()) {
        SignalWaiter signals;
        if (serve->parsed()) {
            dwv_service* svc = nullptr;
            if (dwv_status st = dwv_service_start(ctx.get(), host.empty() ? nullptr : host.c_str(), port, &svc);
                st != DWV_OK) {
                return report_failure(st);
            }
            std::cerr << "dwv: service listening on port " << dwv_service_port(svc) << '\n';
            signals.wait();
            dwv_service_destroy(svc);
        } else {
            dwv_adapter* ad = nullptr;
            if (dwv_status st = dwv_adapter_start(ctx.get(), host.empty() ? nullptr : host.c_str(), port, &ad);
                st != DWV_OK) {
                return report_failure(st);
            }
            std::cerr << "dwv: adapter listening on port " << dwv_adapter_port(ad) << '\n';
            signals.wait();
            dwv_adapter_destroy(ad);
        }
        return 0;
    }

    CString out;
    dwv_status st = DWV_OK;
    if (target->parsed()) {
        std::string baseline;
        if (!baseline_path.empty()) {
            std::ifstream in(baseline_path);
            if (!in) {
                std::cerr << "dwv: cannot read " << baseline_path << '\n';
                return kExitUsage;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            baseline = buf.str();
        }
        st = dwv_target_json(ctx.get(), worldview.c_str(), baseline_path.empty() ? nullptr : baseline.c_str(), &out.p);
    } else if (registry->parsed()) {
        st = dwv_registry_json(ctx.get(), &out.p);
    } else if (census->parsed()) {
        st = dwv_census_json(ctx.get(), &out.p);
    } else if (replay->parsed()) {
        int identical = 0;
        st = dwv_replay_session(ctx.get(), session_id.c_str(), &out.p, &identical);
        if (st == DWV_OK) {
            std::cout << out.p << '\n';
            return identical ? 0 : kExitRowFailures;
        }
    }
    if (st != DWV_OK) return report_failure(st);
    std::cout << out.p << '\n';
    return 0;
}
