// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dwv/classifier.hpp"
#include "dwv/codec.hpp"
#include "dwv/config.hpp"
#include "dwv/generation.hpp"
#include "dwv/image_store.hpp"
#include "dwv/sampling.hpp"
#include "dwv/worldview.hpp"

namespace dwv {

struct Backends {
    std::shared_ptr<const Generator> generator;
    std::shared_ptr<const Classifier> classifier;
};

/// Synthetic pair for empty URLs, remote adapters otherwise.
Backends make_backends(const Config& config);

struct ClassificationFailure {
    std::string image_id;
    ErrorCode code;
    std::string message;
};

struct GenerationResult {
    std::vector<ImageRecord> images;
    std::vector<ClassifiedImage> predictions;
    std::vector<ClassificationFailure> failures;
    DistributionSet aggregated = uniform_set();
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::string backend;
    std::string classifier;

    /// aggregate_top_class over the stored predictions.
    DistributionSet recompute_aggregate() const;
};

struct EditResult {
    GenerationResult generation;
    WorldviewSpec worldview;
    /// Baseline distribution the target was resolved against, if any.
    std::optional<DistributionSet> baseline;
    DistributionSet target = uniform_set();
    std::vector<EditingTriple> triples;
    SamplerMode sampler = SamplerMode::stochastic;
};

Json to_json(const GenerationResult& result);
Json to_json(const EditResult& result);
GenerationResult generation_result_from_json(const Json& j);
EditResult edit_result_from_json(const Json& j);

/// Progress callback: number of images generated and classified so far, and
/// the id of the image that just completed.
using ProgressFn = std::function<void(std::size_t done, const std::string& image_id)>;

/// Stream id used to seed triple sampling from an edit's seed.
inline constexpr std::uint64_t kTripleStream = 0x7472697073ULL;

class Pipeline {
public:
    Pipeline(std::shared_ptr<const Config> config, Backends backends, ImageStore store);

    GenerationResult run_baseline(const std::string& prompt, std::size_t count, std::uint64_t seed,
                                  const ProgressFn& progress = {}) const;

    /// Resolves the target, samples triples from a stream seeded by `seed`,
    /// generates with per-index seeds equal to the baseline's at that seed.
    EditResult run_edit(const std::string& prompt, const WorldviewSpec& worldview,
                        const std::optional<DistributionSet>& baseline, std::size_t count, std::uint64_t seed,
                        SamplerMode sampler, const ProgressFn& progress = {}) const;

    DistributionSet resolve_target(const WorldviewSpec& worldview,
                                   const std::optional<DistributionSet>& baseline) const;

    std::vector<EditingTriple> triples_for(const DistributionSet& target, std::size_t count, std::uint64_t seed,
                                           SamplerMode sampler) const;

    const Config& config() const noexcept { return *config_; }
    const ImageStore& store() const noexcept { return store_; }
    const Backends& backends() const noexcept { return backends_; }

private:
    GenerationResult run(const GenerationRequest& request, const ProgressFn& progress) const;

    std::shared_ptr<const Config> config_;
    Backends backends_;
    ImageStore store_;
    mutable std::mutex generator_flight_;
    mutable std::mutex classifier_flight_;
};

}  // namespace dwv
