// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

// Structural checks for HTTP response bodies. Each returns a list of
// problems; an empty list means the document conforms.

#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dwv/demographics.hpp"

namespace dwv::schema {

using Json = nlohmann::json;
using Problems = std::vector<std::string>;

inline void require(Problems& out, bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
}

inline bool is_hex_id(const Json& j, std::size_t len) {
    if (!j.is_string()) return false;
    const auto& s = j.get_ref<const std::string&>();
    return s.size() == len && s.find_first_not_of("0123456789abcdef") == std::string::npos;
}

inline void distribution(Problems& out, const Json& j, Axis axis, const std::string& at) {
    if (!j.is_object() || j.value("axis", "") != axis_name(axis) || !j.contains("weights") ||
        !j["weights"].is_object()) {
        out.push_back(at + ": not a distribution over " + std::string(axis_name(axis)));
        return;
    }
    double sum = 0;
    for (auto id : axis_categories(axis)) {
        const auto key = std::string(id);
        if (!j["weights"].contains(key) || !j["weights"][key].is_number()) {
            out.push_back(at + ": missing weight " + key);
            continue;
        }
        const double w = j["weights"][key].get<double>();
        require(out, w >= 0, at + ": negative weight " + key);
        sum += w;
    }
    require(out, j["weights"].size() == axis_size(axis), at + ": unexpected categories");
    require(out, std::abs(sum - 1.0) <= 1e-9, at + ": weights do not sum to 1");
}

inline void distribution_set(Problems& out, const Json& j, const std::string& at) {
    if (!j.is_object()) {
        out.push_back(at + ": not an object");
        return;
    }
    for (Axis axis : kAxes) {
        const auto key = std::string(axis_name(axis));
        if (!j.contains(key)) {
            out.push_back(at + ": missing " + key);
            continue;
        }
        distribution(out, j[key], axis, at + "." + key);
    }
}

inline Problems job(const Json& j) {
    Problems out;
    require(out, is_hex_id(j.value("id", Json()), 32), "job.id");
    require(out, is_hex_id(j.value("session_id", Json()), 32), "job.session_id");
    static const std::set<std::string> kinds{"baseline", "edit"}, statuses{"queued", "running", "done", "failed"};
    require(out, j.contains("kind") && j["kind"].is_string() && kinds.count(j["kind"]), "job.kind");
    require(out, j.contains("status") && j["status"].is_string() && statuses.count(j["status"]), "job.status");
    require(out, j.contains("count") && j["count"].is_number_unsigned(), "job.count");
    require(out, j.contains("progress") && j["progress"].is_number_unsigned(), "job.progress");
    require(out, j.contains("image_ids") && j["image_ids"].is_array(), "job.image_ids");
    require(out, j.contains("error") && (j["error"].is_null() || j["error"].is_string()), "job.error");
    if (out.empty()) {
        require(out, j["progress"].get<std::size_t>() <= j["count"].get<std::size_t>(), "job.progress > count");
        require(out, j["image_ids"].size() == j["progress"].get<std::size_t>(), "job.image_ids size");
        for (const auto& id : j["image_ids"]) require(out, is_hex_id(id, 64), "job.image_ids entry");
    }
    return out;
}

inline void generation(Problems& out, const Json& j, const std::string& at) {
    for (auto key : {"images", "predictions", "failures"})
        require(out, j.contains(key) && j[key].is_array(), at + "." + key);
    require(out, j.contains("seed") && j["seed"].is_number_unsigned(), at + ".seed");
    require(out, j.contains("count") && j["count"].is_number_unsigned(), at + ".count");
    if (!out.empty()) return;
    require(out, j["images"].size() == j["count"].get<std::size_t>(), at + ": image count");
    require(out, j["predictions"].size() + j["failures"].size() == j["images"].size(), at + ": predictions");
    for (const auto& img : j["images"]) require(out, is_hex_id(img.value("id", Json()), 64), at + ".images[].id");
    distribution_set(out, j.value("aggregated", Json()), at + ".aggregated");
}

inline Problems session(const Json& j) {
    Problems out;
    require(out, is_hex_id(j.value("id", Json()), 32), "session.id");
    require(out, j.contains("prompt") && j["prompt"].is_string() && !j["prompt"].get<std::string>().empty(),
            "session.prompt");
    require(out, j.contains("baseline"), "session.baseline");
    require(out, j.contains("edits") && j["edits"].is_array(), "session.edits");
    if (!out.empty()) return out;
    if (!j["baseline"].is_null()) generation(out, j["baseline"], "baseline");
    for (const auto& e : j["edits"]) {
        generation(out, e, "edit");
        distribution_set(out, e.value("target", Json()), "edit.target");
        require(out, e.contains("worldview") && e["worldview"].is_object(), "edit.worldview");
        require(out, e.contains("triples") && e["triples"].is_array() &&
                         e["triples"].size() == e.value("count", std::size_t{0}),
                "edit.triples");
    }
    return out;
}

inline Problems error(const Json& j, std::string_view code) {
    Problems out;
    require(out, j.contains("error") && j["error"].is_object(), "error object");
    if (!out.empty()) return out;
    require(out, j["error"].value("code", "") == code, "error.code is " + j["error"].value("code", "") + ", expected " + std::string(code));
    require(out, j["error"].contains("message") && j["error"]["message"].is_string(), "error.message");
    return out;
}

}  // namespace dwv::schema
