// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dwv/codec.hpp"
#include "dwv/digest.hpp"

namespace dwv {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

Json scalar_to_json(const YAML::Node& node) {
    const std::string& text = node.Scalar();
    // Quoted scalars carry the "!" tag and are always strings.
    if (node.Tag() == "!") return text;
    if (text == "~" || text == "null" || text == "Null" || text == "NULL") return nullptr;
    if (text == "true" || text == "True" || text == "TRUE") return true;
    if (text == "false" || text == "False" || text == "FALSE") return false;
    std::int64_t i = 0;
    auto [iend, iec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (iec == std::errc() && iend == text.data() + text.size() && !text.empty()) return i;
    double d = 0.0;
    auto [dend, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (dec == std::errc() && dend == text.data() + text.size() && !text.empty()) return d;
    return text;
}

Json yaml_to_json(const YAML::Node& node) {
    switch (node.Type()) {
        case YAML::NodeType::Null:
        case YAML::NodeType::Undefined:
            return nullptr;
        case YAML::NodeType::Scalar:
            return scalar_to_json(node);
        case YAML::NodeType::Sequence: {
            Json out = Json::array();
            for (const auto& item : node) out.push_back(yaml_to_json(item));
            return out;
        }
        case YAML::NodeType::Map: {
            Json out = Json::object();
            for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
            return out;
        }
    }
    return nullptr;
}

const Json* member(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

DistributionSet distributions_from(const Json& j, const std::string& where) {
    try {
        std::vector<CategoryDistribution> axes;
        for (Axis axis : kAxes) {
            const Json* weights = member(j, std::string(axis_name(axis)).c_str());
            if (!weights) config_error(where + ": missing " + std::string(axis_name(axis)) + " distribution");
            std::map<std::string, double> raw;
            for (const auto& [id, w] : weights->items()) raw[id] = w.get<double>();
            axes.push_back(make_distribution(axis, raw));
        }
        return DistributionSet(std::move(axes[0]), std::move(axes[1]), std::move(axes[2]));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        config_error(where + ": " + e.what());
    } catch (const Json::exception& e) {
        config_error(where + ": " + e.what());
    }
}

PromptProfile profile_from(const Json& j, const std::string& where, double default_edit_success) {
    PromptProfile p;
    p.name = j.value("name", where);
    p.substring = j.value("match", std::string());
    p.pattern = j.value("pattern", std::string());
    p.edit_success = j.value("edit_success", default_edit_success);
    if (const Json* base = member(j, "base")) {
        p.base = distributions_from(*base, where + ".base");
    }
    return p;
}

Config from_document(const Json& doc) {
    Config c = Config::defaults();
    if (!doc.is_null() && !doc.is_object()) config_error("configuration root must be a map");
    try {
        if (const Json* s = member(doc, "service")) {
            c.service.host = s->value("host", c.service.host);
            c.service.port = s->value("port", c.service.port);
            c.service.workers = s->value("workers", c.service.workers);
            c.service.store = s->value("store", c.service.store.string());
            if (c.service.workers == 0) config_error("service.workers must be at least 1");
        }
        if (const Json* b = member(doc, "backends")) {
            if (const Json* u = member(*b, "generator_url")) c.backends.generator_url = u->get<std::string>();
            if (const Json* u = member(*b, "classifier_url")) c.backends.classifier_url = u->get<std::string>();
            c.backends.timeout_seconds = b->value("timeout_seconds", c.backends.timeout_seconds);
            c.backends.single_flight = b->value("single_flight", c.backends.single_flight);
        }
        if (const Json* labels = member(doc, "labels")) {
            c.registry = CategoryRegistry(labels->get<std::map<std::string, std::string>>());
        }
        if (const Json* concepts = member(doc, "concepts")) {
            for (const auto& [id, phrase] : concepts->items()) c.templates.set(id, phrase.get<std::string>());
        }
        if (const Json* census = member(doc, "census")) {
            if (const Json* tables = member(*census, "tables")) {
                for (const auto& [id, t] : tables->items()) {
                    c.census.add(CensusTable{id, distributions_from(t, "census.tables." + id),
                                             t.value("source", std::string()), t.value("vintage", 0)});
                }
            }
            if (const Json* def = member(*census, "default")) c.census.set_default(def->get<std::string>());
        }
        if (const Json* g = member(doc, "guidance")) c.guidance = guidance_from_json(*g);
        if (const Json* s = member(doc, "synthetic")) {
            const double edit_success = s->value("edit_success", 1.0);
            c.synthetic.classifier_noise = s->value("classifier_noise", c.synthetic.classifier_noise);
            c.synthetic.classifier_seed = s->value("classifier_seed", c.synthetic.classifier_seed);
            c.synthetic.default_profile.edit_success = edit_success;
            if (const Json* d = member(*s, "default_profile")) {
                c.synthetic.default_profile = profile_from(*d, "default", edit_success);
            }
            if (const Json* profiles = member(*s, "profiles")) {
                std::size_t i = 0;
                for (const auto& p : *profiles) {
                    c.synthetic.profiles.push_back(
                        profile_from(p, "synthetic.profiles[" + std::to_string(i++) + "]", edit_success));
                }
            }
            if (!(c.synthetic.classifier_noise >= 0.0 && c.synthetic.classifier_noise <= 1.0)) {
                config_error("synthetic.classifier_noise must lie in [0, 1]");
            }
        }
    } catch (const Json::exception& e) {
        config_error(std::string("configuration: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        config_error(std::string("configuration: ") + e.what());
    }
    // Validates matchers and edit_success bounds.
    SyntheticGenerator probe(c.synthetic.profiles, c.synthetic.default_profile);
    c.hash = sha256_hex(doc.dump());
    return c;
}

}  // namespace

Config Config::defaults() {
    Config c;
    c.hash = sha256_hex(Json(nullptr).dump());
    return c;
}

Config Config::parse(std::string_view yaml_text) {
    Json doc;
    try {
        doc = yaml_to_json(YAML::Load(std::string(yaml_text)));
    } catch (const YAML::Exception& e) {
        config_error(std::string("configuration is not valid YAML: ") + e.what());
    }
    return from_document(doc);
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Config::apply_environment() {
    if (const char* port = std::getenv("DWV_PORT"); port && *port) {
        int value = 0;
        auto [end, ec] = std::from_chars(port, port + std::strlen(port), value);
        if (ec != std::errc() || *end != '\0' || value < 0 || value > 65535) config_error("DWV_PORT is not a port number");
        service.port = value;
    }
    if (const char* store = std::getenv("DWV_STORE"); store && *store) service.store = store;
}

}  // namespace dwv
