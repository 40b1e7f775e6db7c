// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "dwv/concepts.hpp"
#include "dwv/demographics.hpp"
#include "dwv/rng.hpp"

namespace dwv {

inline constexpr std::size_t kDefaultImageCount = 5;
inline constexpr std::string_view kSyntheticMediaType = "application/vnd.dwv.synthetic+json";

/// Guidance parameters passed through to the backend untouched.
struct GuidanceConfig {
    std::array<double, 3> strength{1.0, 1.0, 1.0};  // indexed by Axis
    std::map<std::string, std::string> options;

    bool operator==(const GuidanceConfig&) const = default;
};

struct GenerationRequest {
    std::string prompt;
    std::size_t count = kDefaultImageCount;
    std::uint64_t seed = 0;
    /// Absent for baseline generation; otherwise one triple per image.
    std::optional<std::vector<EditingTriple>> triples;
    GuidanceConfig guidance;

    /// Throws InvalidRequest.
    void validate() const;
};

struct ImageRecord {
    std::string id;  // sha256 of the payload bytes
    std::string prompt;
    std::uint64_t seed = 0;
    std::optional<EditingTriple> applied_triple;
    std::string payload_ref;
    std::string media_type;
    std::string backend;
    std::string created_at;
};

struct GeneratedImage {
    ImageRecord record;
    std::string payload;
};

struct BackendDescriptor {
    std::string id;
    /// The job runner serializes calls into backends that set this.
    bool single_flight = false;
};

class Generator {
public:
    virtual ~Generator() = default;
    virtual BackendDescriptor descriptor() const = 0;
    /// Returns exactly req.count images, image i edited with triple i if given.
    virtual std::vector<GeneratedImage> generate(const GenerationRequest& req) const = 0;
};

/// Seed of image `index` within a request. Edits at the same index as a
/// baseline image reuse its seed.
constexpr std::uint64_t image_seed(std::uint64_t request_seed, std::size_t index) noexcept {
    return derive_seed(request_seed, index);
}

/// One category id per axis.
struct Demographics {
    std::array<std::string, 3> ids;

    const std::string& get(Axis axis) const { return ids[static_cast<std::size_t>(axis)]; }
    bool operator==(const Demographics&) const = default;
};

/// Canonical synthetic image document: compact JSON, sorted keys.
std::string synthetic_payload(std::string_view prompt, std::uint64_t seed, const Demographics& demographics);

struct SyntheticPortrait {
    std::string prompt;
    std::uint64_t seed = 0;
    Demographics demographics;
};

/// Throws PayloadUnreadable.
SyntheticPortrait decode_synthetic_payload(std::string_view payload);

/// Per axis, with probability `edit_success` the category becomes the
/// triple's, otherwise it keeps the base draw. Axes are visited in order.
Demographics apply_edit(const Demographics& base, const EditingTriple& triple, double edit_success, Rng& rng);

/// Biased baseline behaviour for prompts matching `substring` (case-insensitive)
/// or `pattern` (ECMAScript regex, searched).
struct PromptProfile {
    std::string name = "default";
    std::string substring;
    std::string pattern;
    DistributionSet base = uniform_set();
    double edit_success = 1.0;

    bool matches(std::string_view prompt) const;
};

/// Deterministic stand-in for a diffusion model. Demographics of each image
/// are drawn from the first matching profile, then edited per its triple.
class SyntheticGenerator final : public Generator {
public:
    explicit SyntheticGenerator(std::vector<PromptProfile> profiles = {},
                                PromptProfile default_profile = {});

    BackendDescriptor descriptor() const override { return {"synthetic", false}; }
    std::vector<GeneratedImage> generate(const GenerationRequest& req) const override;

    const PromptProfile& profile_for(std::string_view prompt) const;

private:
    std::vector<PromptProfile> profiles_;
    PromptProfile default_profile_;
};

}  // namespace dwv
