// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/codec.hpp"

namespace dwv {

namespace {

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("malformed JSON document: ") + e.what());
    }
}

}  // namespace

Json to_json(const CategoryDistribution& dist) {
    Json weights = Json::object();
    auto ids = axis_categories(dist.axis());
    for (std::size_t i = 0; i < ids.size(); ++i) weights[std::string(ids[i])] = dist[i];
    return Json{{"axis", axis_name(dist.axis())}, {"weights", std::move(weights)}};
}

Json to_json(const DistributionSet& set) {
    Json out = Json::object();
    for (Axis axis : kAxes) out[std::string(axis_name(axis))] = to_json(set.get(axis));
    return out;
}

Json to_json(const ClassifierPrediction& pred) {
    Json top = Json::object();
    for (Axis axis : kAxes) top[std::string(axis_name(axis))] = pred.top(axis);
    return Json{{"probabilities", to_json(pred.probabilities())}, {"top", std::move(top)}};
}

Json to_json(const ClassifiedImage& image) {
    return Json{{"image_id", image.image_id},
                {"prediction", to_json(image.prediction)},
                {"faces_found", image.faces_found},
                {"multiple_faces", image.multiple_faces}};
}

Json to_json(const EditingTriple& triple) {
    Json out = Json::object();
    Json concepts = Json::object();
    for (Axis axis : kAxes) {
        out[std::string(axis_name(axis))] = triple.category(axis);
        concepts[std::string(axis_name(axis))] = triple.concept_for(axis);
    }
    out["concepts"] = std::move(concepts);
    return out;
}

Json to_json(const WorldviewSpec& spec) {
    Json out{{"mode", mode_name(spec.mode)}};
    switch (spec.mode) {
        case WorldviewMode::parity:
            break;
        case WorldviewMode::census:
            out["census_ref"] = spec.census_ref;
            break;
        case WorldviewMode::relative:
            out["t"] = spec.t;
            break;
        case WorldviewMode::absolute: {
            Json selections = Json::object();
            for (const auto& [axis, ids] : spec.selections) {
                Json list = Json::array();
                for (std::string_view id : axis_categories(axis)) {
                    if (ids.count(std::string(id))) list.push_back(id);
                }
                selections[std::string(axis_name(axis))] = std::move(list);
            }
            out["selections"] = std::move(selections);
            break;
        }
    }
    return out;
}

Json to_json(const GuidanceConfig& guidance) {
    Json strength = Json::object();
    for (Axis axis : kAxes) strength[std::string(axis_name(axis))] = guidance.strength[static_cast<std::size_t>(axis)];
    return Json{{"strength", std::move(strength)}, {"options", guidance.options}};
}

Json to_json(const GenerationRequest& req) {
    Json triples = nullptr;
    if (req.triples) {
        triples = Json::array();
        for (const auto& t : *req.triples) triples.push_back(to_json(t));
    }
    return Json{{"prompt", req.prompt},
                {"count", req.count},
                {"seed", req.seed},
                {"triples", std::move(triples)},
                {"guidance", to_json(req.guidance)}};
}

Json to_json(const ImageRecord& record) {
    return Json{{"id", record.id},
                {"prompt", record.prompt},
                {"seed", record.seed},
                {"applied_triple", record.applied_triple ? to_json(*record.applied_triple) : Json(nullptr)},
                {"payload_ref", record.payload_ref},
                {"media_type", record.media_type},
                {"backend", record.backend},
                {"created_at", record.created_at}};
}

Json to_json(const CensusTable& table) {
    return Json{{"id", table.id},
                {"source", table.source},
                {"vintage", table.vintage},
                {"distributions", to_json(table.distributions)}};
}

Json to_json(const CategoryRegistry& registry) {
    Json axes = Json::array();
    for (Axis axis : kAxes) {
        Json categories = Json::array();
        for (const auto& c : registry.categories(axis)) {
            Json entry{{"id", c.id}, {"label", c.display_label}};
            if (!c.bin.empty()) entry["bin"] = c.bin;
            categories.push_back(std::move(entry));
        }
        axes.push_back(Json{{"id", axis_name(axis)}, {"categories", std::move(categories)}});
    }
    return Json{{"axes", std::move(axes)}};
}

CategoryDistribution distribution_from_json(const Json& j, std::optional<Axis> expected) {
    return guarded([&] {
        // Accept both {"axis":..,"weights":{..}} and a bare weight map when the
        // axis is known from context.
        const Json* weights = &j;
        Axis axis;
        if (j.contains("weights")) {
            axis = parse_axis(j.at("axis").get<std::string>());
            weights = &j.at("weights");
        } else if (expected) {
            axis = *expected;
        } else {
            throw Error(ErrorCode::InvalidRequest, "distribution without an axis");
        }
        if (expected && axis != *expected) {
            throw Error(ErrorCode::AxisMismatch, "expected a " + std::string(axis_name(*expected)) + " distribution");
        }
        if (!weights->is_object()) throw Error(ErrorCode::InvalidRequest, "distribution weights must be an object");
        std::vector<double> dense(axis_size(axis), 0.0);
        for (const auto& [id, w] : weights->items()) dense[category_index(axis, id)] = w.get<double>();
        return CategoryDistribution(axis, std::move(dense));
    });
}

DistributionSet distribution_set_from_json(const Json& j) {
    return guarded([&] {
        return DistributionSet(distribution_from_json(j.at("gender"), Axis::gender),
                               distribution_from_json(j.at("race"), Axis::race),
                               distribution_from_json(j.at("age"), Axis::age));
    });
}

ClassifierPrediction prediction_from_json(const Json& j) {
    return guarded([&] {
        const Json& probs = j.contains("probabilities") ? j.at("probabilities") : j;
        return ClassifierPrediction(distribution_set_from_json(probs));
    });
}

ClassifiedImage classified_image_from_json(const Json& j) {
    return guarded([&] {
        return ClassifiedImage{j.at("image_id").get<std::string>(), prediction_from_json(j.at("prediction")),
                               j.value("faces_found", 1), j.value("multiple_faces", false)};
    });
}

EditingTriple triple_from_json(const Json& j) {
    return guarded([&] {
        EditingTriple triple;
        for (Axis axis : kAxes) {
            const auto slot = static_cast<std::size_t>(axis);
            const std::string name(axis_name(axis));
            triple.category_ids[slot] = j.at(name).get<std::string>();
            category_index(axis, triple.category_ids[slot]);
            triple.concepts[slot] = j.at("concepts").at(name).get<std::string>();
        }
        return triple;
    });
}

WorldviewSpec worldview_from_json(const Json& j) {
    return guarded([&] {
        if (j.is_string()) return parse_worldview(j.get<std::string>());
        if (!j.is_object()) throw Error(ErrorCode::InvalidWorldview, "worldview must be an object or string");
        const std::string mode = j.at("mode").get<std::string>();
        WorldviewSpec spec;
        if (mode == "parity") {
            spec = WorldviewSpec::parity();
        } else if (mode == "census") {
            spec = WorldviewSpec::census(j.value("census_ref", std::string()));
        } else if (mode == "relative") {
            if (!j.contains("t")) throw Error(ErrorCode::InvalidWorldview, "relative worldview needs t");
            spec = WorldviewSpec::relative(j.at("t").get<double>());
        } else if (mode == "absolute") {
            std::map<Axis, std::set<std::string>> selections;
            if (j.contains("selections")) {
                for (const auto& [name, ids] : j.at("selections").items()) {
                    auto& chosen = selections[parse_axis(name)];
                    for (const auto& id : ids) chosen.insert(id.get<std::string>());
                }
            }
            spec = WorldviewSpec::absolute(std::move(selections));
        } else {
            throw Error(ErrorCode::InvalidWorldview, "unknown worldview mode '" + mode + "'");
        }
        spec.validate();
        return spec;
    });
}

GuidanceConfig guidance_from_json(const Json& j) {
    return guarded([&] {
        GuidanceConfig g;
        if (j.is_null()) return g;
        if (j.contains("strength")) {
            for (const auto& [name, value] : j.at("strength").items()) {
                g.strength[static_cast<std::size_t>(parse_axis(name))] = value.get<double>();
            }
        }
        if (j.contains("options")) g.options = j.at("options").get<std::map<std::string, std::string>>();
        return g;
    });
}

GenerationRequest generation_request_from_json(const Json& j) {
    return guarded([&] {
        GenerationRequest req;
        req.prompt = j.at("prompt").get<std::string>();
        req.count = j.at("count").get<std::size_t>();
        req.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("triples") && !j.at("triples").is_null()) {
            std::vector<EditingTriple> triples;
            for (const auto& t : j.at("triples")) triples.push_back(triple_from_json(t));
            req.triples = std::move(triples);
        }
        if (j.contains("guidance")) req.guidance = guidance_from_json(j.at("guidance"));
        req.validate();
        return req;
    });
}

ImageRecord image_record_from_json(const Json& j) {
    return guarded([&] {
        ImageRecord r;
        r.id = j.at("id").get<std::string>();
        r.prompt = j.value("prompt", std::string());
        r.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("applied_triple") && !j.at("applied_triple").is_null()) {
            r.applied_triple = triple_from_json(j.at("applied_triple"));
        }
        r.payload_ref = j.value("payload_ref", std::string());
        r.media_type = j.value("media_type", std::string());
        r.backend = j.value("backend", std::string());
        r.created_at = j.value("created_at", std::string());
        return r;
    });
}

}  // namespace dwv
