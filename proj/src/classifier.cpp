// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/classifier.hpp"

#include "dwv/rng.hpp"

namespace dwv {

SyntheticClassifier::SyntheticClassifier(double noise, std::uint64_t seed) : noise_(noise), seed_(seed) {
    if (!(noise >= 0.0 && noise <= 1.0)) throw Error(ErrorCode::OutOfRange, "classifier noise must lie in [0, 1]");
}

ClassifierDescriptor SyntheticClassifier::descriptor() const {
    ClassifierDescriptor d;
    d.id = "synthetic";
    d.noise = noise_;
    d.face_policy = "single";
    return d;
}

ClassifiedImage SyntheticClassifier::classify(const ImageRecord& image, std::string_view payload) const {
    const SyntheticPortrait portrait = decode_synthetic_payload(payload);
    const std::uint64_t image_stream = derive_seed(seed_, fnv1a64(image.id));

    std::vector<CategoryDistribution> per_axis;
    for (Axis axis : kAxes) {
        const std::size_t k = axis_size(axis);
        std::size_t reported = category_index(axis, portrait.demographics.get(axis));
        Rng rng(derive_seed(image_stream, static_cast<std::uint64_t>(axis)));
        if (rng.bernoulli(noise_)) {
            const std::size_t other = static_cast<std::size_t>(rng.below(k - 1));
            reported = other >= reported ? other + 1 : other;
        }
        std::vector<double> w(k, 0.0);
        w[reported] = 1.0;
        per_axis.emplace_back(axis, std::move(w));
    }
    return ClassifiedImage{
        image.id,
        ClassifierPrediction(DistributionSet(std::move(per_axis[0]), std::move(per_axis[1]), std::move(per_axis[2]))),
        1,
        false,
    };
}

std::vector<ClassifyOutcome> classify_batch(const Classifier& classifier, std::span<const ImageRecord> images,
                                            const PayloadLoader& load) {
    std::vector<ClassifyOutcome> out;
    out.reserve(images.size());
    for (const auto& image : images) {
        ClassifyOutcome outcome;
        outcome.image_id = image.id;
        try {
            auto payload = load(image);
            if (!payload) throw Error(ErrorCode::PayloadUnreadable, "payload for image " + image.id + " unavailable");
            outcome.result = classifier.classify(image, *payload);
        } catch (const Error& e) {
            outcome.error_code = e.code();
            outcome.error = e.what();
        } catch (const std::exception& e) {
            outcome.error_code = ErrorCode::BackendUnavailable;
            outcome.error = e.what();
        }
        out.push_back(std::move(outcome));
    }
    return out;
}

}  // namespace dwv
