// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON forms shared by the HTTP API, the adapter wire protocol, the session
// log and audit reports. Distributions are always keyed by canonical ids.

#include "dwv/classifier.hpp"
#include "dwv/concepts.hpp"
#include "dwv/demographics.hpp"
#include "dwv/generation.hpp"
#include "dwv/worldview.hpp"
#include "json.hpp"

namespace dwv {

using Json = nlohmann::json;

Json to_json(const CategoryDistribution& dist);
Json to_json(const DistributionSet& set);
Json to_json(const ClassifierPrediction& pred);
Json to_json(const ClassifiedImage& image);
Json to_json(const EditingTriple& triple);
Json to_json(const WorldviewSpec& spec);
Json to_json(const GuidanceConfig& guidance);
Json to_json(const GenerationRequest& req);
Json to_json(const ImageRecord& record);
Json to_json(const CensusTable& table);
Json to_json(const CategoryRegistry& registry);

// Parsers throw InvalidRequest for structural problems and keep the domain
// error (UnknownCategory, OutOfRange, ...) otherwise.
CategoryDistribution distribution_from_json(const Json& j, std::optional<Axis> expected = std::nullopt);
DistributionSet distribution_set_from_json(const Json& j);
ClassifierPrediction prediction_from_json(const Json& j);
ClassifiedImage classified_image_from_json(const Json& j);
EditingTriple triple_from_json(const Json& j);
/// Accepts the object form or a mini-syntax string.
WorldviewSpec worldview_from_json(const Json& j);
GuidanceConfig guidance_from_json(const Json& j);
GenerationRequest generation_request_from_json(const Json& j);
ImageRecord image_record_from_json(const Json& j);

}  // namespace dwv
