// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/generation.hpp"

#include <algorithm>
#include <cctype>

#include "dwv/digest.hpp"
#include "json.hpp"

namespace dwv {

void GenerationRequest::validate() const {
    if (prompt.empty()) throw Error(ErrorCode::InvalidRequest, "generation request without a prompt");
    if (count == 0) throw Error(ErrorCode::InvalidRequest, "generation count must be positive");
    if (triples && triples->size() != count) {
        throw Error(ErrorCode::InvalidRequest, "expected " + std::to_string(count) + " editing triples, got " +
                                                   std::to_string(triples->size()));
    }
    for (double s : guidance.strength) {
        if (!(s >= 0.0)) throw Error(ErrorCode::InvalidRequest, "guidance strength must be non-negative");
    }
}

std::string synthetic_payload(std::string_view prompt, std::uint64_t seed, const Demographics& demographics) {
    nlohmann::json doc = {
        {"kind", "synthetic-portrait"},
        {"prompt", prompt},
        {"seed", seed},
        {"gender", demographics.get(Axis::gender)},
        {"race", demographics.get(Axis::race)},
        {"age", demographics.get(Axis::age)},
    };
    return doc.dump();
}

SyntheticPortrait decode_synthetic_payload(std::string_view payload) {
    try {
        const auto doc = nlohmann::json::parse(payload);
        if (doc.at("kind").get<std::string>() != "synthetic-portrait") {
            throw Error(ErrorCode::PayloadUnreadable, "payload is not a synthetic portrait");
        }
        SyntheticPortrait out;
        out.prompt = doc.at("prompt").get<std::string>();
        out.seed = doc.at("seed").get<std::uint64_t>();
        for (Axis axis : kAxes) {
            auto id = doc.at(std::string(axis_name(axis))).get<std::string>();
            category_index(axis, id);
            out.demographics.ids[static_cast<std::size_t>(axis)] = std::move(id);
        }
        return out;
    } catch (const Error& e) {
        throw Error(ErrorCode::PayloadUnreadable, e.what());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::PayloadUnreadable, std::string("unreadable synthetic payload: ") + e.what());
    }
}

Demographics apply_edit(const Demographics& base, const EditingTriple& triple, double edit_success, Rng& rng) {
    if (!(edit_success >= 0.0 && edit_success <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "edit success probability must lie in [0, 1]");
    }
    Demographics out = base;
    for (Axis axis : kAxes) {
        if (rng.bernoulli(edit_success)) out.ids[static_cast<std::size_t>(axis)] = triple.category(axis);
    }
    return out;
}

bool PromptProfile::matches(std::string_view prompt) const {
    if (!substring.empty()) {
        auto lower = [](unsigned char c) { return std::tolower(c); };
        auto it = std::search(prompt.begin(), prompt.end(), substring.begin(), substring.end(),
                              [&](char a, char b) { return lower(a) == lower(b); });
        if (it != prompt.end()) return true;
    }
    if (!pattern.empty()) {
        const std::regex re(pattern, std::regex::ECMAScript | std::regex::icase);
        if (std::regex_search(prompt.begin(), prompt.end(), re)) return true;
    }
    return false;
}

SyntheticGenerator::SyntheticGenerator(std::vector<PromptProfile> profiles, PromptProfile default_profile)
    : profiles_(std::move(profiles)), default_profile_(std::move(default_profile)) {
    for (const auto& p : profiles_) {
        if (p.substring.empty() && p.pattern.empty()) {
            throw Error(ErrorCode::ConfigError, "prompt profile '" + p.name + "' has no matcher");
        }
        if (!(p.edit_success >= 0.0 && p.edit_success <= 1.0)) {
            throw Error(ErrorCode::ConfigError, "prompt profile '" + p.name + "' edit_success outside [0, 1]");
        }
        if (!p.pattern.empty()) {
            try {
                std::regex probe(p.pattern);
            } catch (const std::regex_error& e) {
                throw Error(ErrorCode::ConfigError, "prompt profile '" + p.name + "' pattern: " + e.what());
            }
        }
    }
}

const PromptProfile& SyntheticGenerator::profile_for(std::string_view prompt) const {
    for (const auto& p : profiles_) {
        if (p.matches(prompt)) return p;
    }
    return default_profile_;
}

std::vector<GeneratedImage> SyntheticGenerator::generate(const GenerationRequest& req) const {
    req.validate();
    const PromptProfile& profile = profile_for(req.prompt);
    std::vector<GeneratedImage> out;
    out.reserve(req.count);
    for (std::size_t i = 0; i < req.count; ++i) {
        const std::uint64_t seed = image_seed(req.seed, i);
        Rng rng(seed);
        Demographics demographics;
        for (Axis axis : kAxes) {
            const auto& base = profile.base.get(axis);
            demographics.ids[static_cast<std::size_t>(axis)] = std::string(axis_categories(axis)[rng.categorical(base.weights())]);
        }
        std::optional<EditingTriple> triple;
        if (req.triples) {
            triple = (*req.triples)[i];
            demographics = apply_edit(demographics, *triple, profile.edit_success, rng);
        }
        GeneratedImage image;
        image.payload = synthetic_payload(req.prompt, seed, demographics);
        image.record.id = sha256_hex(image.payload);
        image.record.prompt = req.prompt;
        image.record.seed = seed;
        image.record.applied_triple = std::move(triple);
        image.record.media_type = std::string(kSyntheticMediaType);
        image.record.backend = descriptor().id;
        image.record.created_at = utc_timestamp();
        out.push_back(std::move(image));
    }
    return out;
}

}  // namespace dwv
