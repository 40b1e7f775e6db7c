// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dwv/concepts.hpp"
#include "dwv/demographics.hpp"
#include "dwv/generation.hpp"
#include "dwv/worldview.hpp"

namespace dwv {

struct ServiceSettings {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t workers = 2;
    std::filesystem::path store = "dwv-store";
};

/// An empty URL selects the in-process synthetic backend.
struct BackendSettings {
    std::string generator_url;
    std::string classifier_url;
    int timeout_seconds = 300;
    bool single_flight = true;
};

struct SyntheticSettings {
    std::vector<PromptProfile> profiles;
    PromptProfile default_profile;
    double classifier_noise = 0.0;
    std::uint64_t classifier_seed = 0;
};

/// Effective configuration: built-in defaults overlaid with a YAML (or JSON)
/// document. See config/example.yaml for the schema.
struct Config {
    ServiceSettings service;
    BackendSettings backends;
    SyntheticSettings synthetic;
    CategoryRegistry registry;
    ConceptTemplateSet templates;
    CensusCatalog census = CensusCatalog::builtin();
    GuidanceConfig guidance;
    /// SHA-256 of the canonical JSON form of the source document.
    std::string hash;

    static Config defaults();
    static Config load(const std::filesystem::path& path);
    static Config parse(std::string_view yaml_text);

    /// DWV_PORT and DWV_STORE override the service port and store path.
    void apply_environment();
};

}  // namespace dwv
