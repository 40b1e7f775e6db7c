// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwv/demographics.hpp"
#include "dwv/generation.hpp"

namespace dwv {

struct ClassifierDescriptor {
    std::string id;
    std::vector<Axis> axes{kAxes.begin(), kAxes.end()};
    double noise = 0.0;
    std::string face_policy = "largest";
    bool single_flight = false;
};

struct ClassifiedImage {
    std::string image_id;
    ClassifierPrediction prediction;
    int faces_found = 1;
    bool multiple_faces = false;

    bool operator==(const ClassifiedImage&) const = default;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ClassifierDescriptor descriptor() const = 0;
    /// Throws PayloadUnreadable, NoFaceDetected or BackendUnavailable.
    virtual ClassifiedImage classify(const ImageRecord& image, std::string_view payload) const = 0;
};

/// Reads the demographics encoded in a synthetic payload back out. With
/// probability `noise` an axis reports a uniformly drawn wrong category;
/// each axis uses its own stream seeded by (seed, image id, axis).
class SyntheticClassifier final : public Classifier {
public:
    explicit SyntheticClassifier(double noise = 0.0, std::uint64_t seed = 0);

    ClassifierDescriptor descriptor() const override;
    ClassifiedImage classify(const ImageRecord& image, std::string_view payload) const override;

private:
    double noise_;
    std::uint64_t seed_;
};

/// Returns the payload bytes of an image, or nullopt when unavailable.
using PayloadLoader = std::function<std::optional<std::string>(const ImageRecord&)>;

struct ClassifyOutcome {
    std::string image_id;
    std::optional<ClassifiedImage> result;
    std::optional<ErrorCode> error_code;
    std::string error;

    bool ok() const noexcept { return result.has_value(); }
};

/// Classifies each image in order. Failures are recorded per item.
std::vector<ClassifyOutcome> classify_batch(const Classifier& classifier, std::span<const ImageRecord> images,
                                            const PayloadLoader& load);

}  // namespace dwv
