// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/pipeline.hpp"

#include "dwv/wire.hpp"

namespace dwv {

Backends make_backends(const Config& config) {
    Backends b;
    if (config.backends.generator_url.empty()) {
        b.generator = std::make_shared<SyntheticGenerator>(config.synthetic.profiles, config.synthetic.default_profile);
    } else {
        b.generator = std::make_shared<RemoteGenerator>(config.backends.generator_url, config.backends.timeout_seconds,
                                                        config.backends.single_flight);
    }
    if (config.backends.classifier_url.empty()) {
        b.classifier =
            std::make_shared<SyntheticClassifier>(config.synthetic.classifier_noise, config.synthetic.classifier_seed);
    } else {
        b.classifier = std::make_shared<RemoteClassifier>(config.backends.classifier_url,
                                                          config.backends.timeout_seconds, config.backends.single_flight);
    }
    return b;
}

DistributionSet GenerationResult::recompute_aggregate() const {
    std::vector<ClassifierPrediction> preds;
    preds.reserve(predictions.size());
    for (const auto& p : predictions) preds.push_back(p.prediction);
    return aggregate_top_class(preds);
}

Json to_json(const GenerationResult& result) {
    Json images = Json::array();
    for (const auto& r : result.images) images.push_back(to_json(r));
    Json predictions = Json::array();
    for (const auto& p : result.predictions) predictions.push_back(to_json(p));
    Json failures = Json::array();
    for (const auto& f : result.failures) {
        failures.push_back(Json{{"image_id", f.image_id}, {"code", error_code_name(f.code)}, {"message", f.message}});
    }
    return Json{{"images", std::move(images)},
                {"predictions", std::move(predictions)},
                {"failures", std::move(failures)},
                {"aggregated", to_json(result.aggregated)},
                {"seed", result.seed},
                {"count", result.count},
                {"backend", result.backend},
                {"classifier", result.classifier}};
}

Json to_json(const EditResult& result) {
    Json out = to_json(result.generation);
    out["worldview"] = to_json(result.worldview);
    out["worldview_text"] = format_worldview(result.worldview);
    out["baseline_used"] = result.baseline ? to_json(*result.baseline) : Json(nullptr);
    out["target"] = to_json(result.target);
    Json triples = Json::array();
    for (const auto& t : result.triples) triples.push_back(to_json(t));
    out["triples"] = std::move(triples);
    out["sampler"] = sampler_name(result.sampler);
    return out;
}

GenerationResult generation_result_from_json(const Json& j) {
    try {
        GenerationResult r;
        for (const auto& image : j.at("images")) r.images.push_back(image_record_from_json(image));
        for (const auto& p : j.at("predictions")) r.predictions.push_back(classified_image_from_json(p));
        if (j.contains("failures")) {
            for (const auto& f : j.at("failures")) {
                r.failures.push_back(ClassificationFailure{
                    f.at("image_id").get<std::string>(),
                    parse_error_code(f.at("code").get<std::string>()).value_or(ErrorCode::BackendUnavailable),
                    f.value("message", std::string())});
            }
        }
        r.aggregated = distribution_set_from_json(j.at("aggregated"));
        r.seed = j.at("seed").get<std::uint64_t>();
        r.count = j.at("count").get<std::size_t>();
        r.backend = j.value("backend", std::string());
        r.classifier = j.value("classifier", std::string());
        return r;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("malformed generation result: ") + e.what());
    }
}

EditResult edit_result_from_json(const Json& j) {
    try {
        EditResult r;
        r.generation = generation_result_from_json(j);
        r.worldview = worldview_from_json(j.at("worldview"));
        if (j.contains("baseline_used") && !j.at("baseline_used").is_null()) {
            r.baseline = distribution_set_from_json(j.at("baseline_used"));
        }
        r.target = distribution_set_from_json(j.at("target"));
        for (const auto& t : j.at("triples")) r.triples.push_back(triple_from_json(t));
        r.sampler = parse_sampler(j.at("sampler").get<std::string>());
        return r;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("malformed edit result: ") + e.what());
    }
}

Pipeline::Pipeline(std::shared_ptr<const Config> config, Backends backends, ImageStore store)
    : config_(std::move(config)), backends_(std::move(backends)), store_(std::move(store)) {}

GenerationResult Pipeline::run(const GenerationRequest& request, const ProgressFn& progress) const {
    request.validate();
    const BackendDescriptor gen = backends_.generator->descriptor();
    const ClassifierDescriptor cls = backends_.classifier->descriptor();

    std::vector<GeneratedImage> generated;
    {
        std::unique_lock lock(generator_flight_, std::defer_lock);
        if (gen.single_flight) lock.lock();
        generated = backends_.generator->generate(request);
    }
    if (generated.size() != request.count) {
        throw Error(ErrorCode::BackendUnavailable, "generator returned the wrong number of images");
    }

    GenerationResult result;
    result.seed = request.seed;
    result.count = request.count;
    result.backend = gen.id;
    result.classifier = cls.id;
    for (auto& image : generated) {
        image.record.id = store_.put(image.payload);
        image.record.payload_ref = std::filesystem::relative(store_.path_for(image.record.id), store_.root()).string();
        result.images.push_back(image.record);
    }

    PayloadLoader loader = [&](const ImageRecord& record) { return store_.get(record.id); };
    for (std::size_t i = 0; i < result.images.size(); ++i) {
        std::vector<ClassifyOutcome> outcome;
        {
            std::unique_lock lock(classifier_flight_, std::defer_lock);
            if (cls.single_flight) lock.lock();
            outcome = classify_batch(*backends_.classifier, std::span(&result.images[i], 1), loader);
        }
        if (outcome[0].ok()) {
            result.predictions.push_back(std::move(*outcome[0].result));
        } else {
            result.failures.push_back(ClassificationFailure{outcome[0].image_id, *outcome[0].error_code, outcome[0].error});
        }
        if (progress) progress(i + 1, result.images[i].id);
    }
    if (result.predictions.empty()) {
        const auto& first = result.failures.front();
        throw Error(first.code, "no image could be classified: " + first.message);
    }
    result.aggregated = result.recompute_aggregate();
    return result;
}

GenerationResult Pipeline::run_baseline(const std::string& prompt, std::size_t count, std::uint64_t seed,
                                        const ProgressFn& progress) const {
    if (prompt.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt must not be empty");
    GenerationRequest request;
    request.prompt = prompt;
    request.count = count;
    request.seed = seed;
    request.guidance = config_->guidance;
    return run(request, progress);
}

DistributionSet Pipeline::resolve_target(const WorldviewSpec& worldview,
                                         const std::optional<DistributionSet>& baseline) const {
    worldview.validate();
    return target_for(worldview, baseline, config_->census);
}

std::vector<EditingTriple> Pipeline::triples_for(const DistributionSet& target, std::size_t count,
                                                 std::uint64_t seed, SamplerMode sampler) const {
    Rng rng(derive_seed(seed, kTripleStream));
    return draw_triples(sampler, target, count, rng, config_->registry, config_->templates);
}

EditResult Pipeline::run_edit(const std::string& prompt, const WorldviewSpec& worldview,
                              const std::optional<DistributionSet>& baseline, std::size_t count, std::uint64_t seed,
                              SamplerMode sampler, const ProgressFn& progress) const {
    if (prompt.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt must not be empty");
    EditResult result;
    result.worldview = worldview;
    result.baseline = baseline;
    result.sampler = sampler;
    result.target = resolve_target(worldview, baseline);
    if (count == 0) throw Error(ErrorCode::InvalidRequest, "generation count must be positive");
    result.triples = triples_for(result.target, count, seed, sampler);

    GenerationRequest request;
    request.prompt = prompt;
    request.count = count;
    request.seed = seed;
    request.triples = result.triples;
    request.guidance = config_->guidance;
    result.generation = run(request, progress);
    return result;
}

}  // namespace dwv
