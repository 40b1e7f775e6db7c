// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "dwv/codec.hpp"
#include "dwv/worldview.hpp"
#include "support.hpp"

namespace dwv {
namespace {

using testing::error_of;

TEST(Codec, DistributionShape) {
    auto j = to_json(make_distribution(Axis::gender, {{"female", 1}, {"male", 3}}));
    EXPECT_EQ(j["axis"], "gender");
    EXPECT_EQ(j["weights"]["female"], 0.25);
    EXPECT_EQ(j["weights"]["male"], 0.75);
}

TEST(CodecProperty, DistributionSetRoundTripIsBitExact) {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        auto one = [&](Axis axis) {
            std::vector<double> w(axis_size(axis));
            for (auto& x : w) x = u(gen);
            w[0] += 1e-6;
            return CategoryDistribution(axis, w);
        };
        DistributionSet s(one(Axis::gender), one(Axis::race), one(Axis::age));
        auto text = to_json(s).dump();
        EXPECT_EQ(distribution_set_from_json(Json::parse(text)), s);
    }
}

TEST(Codec, WorldviewObjectAndString) {
    auto spec = WorldviewSpec::absolute(
        {{Axis::gender, {"female"}}, {Axis::race, {"black"}}, {Axis::age, {"age_30_39", "age_40_49"}}});
    EXPECT_EQ(worldview_from_json(to_json(spec)), spec);
    EXPECT_EQ(worldview_from_json(Json("relative:t=0.82")), WorldviewSpec::relative(0.82));
    EXPECT_EQ(worldview_from_json(Json{{"mode", "relative"}, {"t", 0.25}}), WorldviewSpec::relative(0.25));
    EXPECT_EQ(worldview_from_json(Json{{"mode", "census"}}), WorldviewSpec::census());
    EXPECT_EQ(error_of([] { worldview_from_json(Json{{"mode", "vibes"}}); }).has_value(), true);
    EXPECT_EQ(error_of([] { worldview_from_json(Json{{"mode", "relative"}, {"t", 3}}); }), ErrorCode::OutOfRange);
}

TEST(Codec, TripleRoundTrip) {
    auto t = make_triple("male", "southeast_asian", "age_60_69", CategoryRegistry(), ConceptTemplateSet());
    auto j = to_json(t);
    EXPECT_EQ(j["gender"], "male");
    EXPECT_EQ(j["concepts"]["age"], "60-69 year old person");
    EXPECT_EQ(triple_from_json(j), t);
}

TEST(Codec, PredictionRoundTrip) {
    ClassifierPrediction p(DistributionSet(make_distribution(Axis::gender, {{"female", 0.3}, {"male", 0.7}}),
                                           CategoryDistribution::one_hot(Axis::race, "indian"),
                                           CategoryDistribution::uniform(Axis::age)));
    auto j = to_json(p);
    EXPECT_EQ(j["top"]["gender"], "male");
    EXPECT_EQ(j["top"]["age"], "age_0_2");
    EXPECT_EQ(prediction_from_json(j), p);
}

TEST(Codec, RequestRoundTrip) {
    GenerationRequest req;
    req.prompt = "a firefighter";
    req.count = 2;
    req.seed = 0xFFFFFFFFFFFFFFFFULL;
    auto t = make_triple("female", "white", "age_30_39", CategoryRegistry(), ConceptTemplateSet());
    req.triples = std::vector<EditingTriple>{t, t};
    req.guidance.strength = {2.0, 1.5, 0.5};
    req.guidance.options["steps"] = "50";
    auto back = generation_request_from_json(Json::parse(to_json(req).dump()));
    EXPECT_EQ(back.prompt, req.prompt);
    EXPECT_EQ(back.seed, req.seed);
    EXPECT_EQ(back.triples, req.triples);
    EXPECT_EQ(back.guidance, req.guidance);
}

TEST(Codec, StructuralErrors) {
    EXPECT_EQ(error_of([] { distribution_from_json(Json::array()); }), ErrorCode::InvalidRequest);
    EXPECT_EQ(error_of([] { distribution_from_json(Json{{"axis", "gender"}, {"weights", {{"robot", 1}}}}); }),
              ErrorCode::UnknownCategory);
    EXPECT_EQ(error_of([] {
                  distribution_from_json(Json{{"axis", "gender"}, {"weights", {{"female", 1}}}}, Axis::race);
              }),
              ErrorCode::AxisMismatch);
}

TEST(Codec, RegistryListsAxesInCanonicalOrder) {
    auto j = to_json(CategoryRegistry());
    ASSERT_EQ(j["axes"].size(), 3u);
    EXPECT_EQ(j["axes"][0]["id"], "gender");
    EXPECT_EQ(j["axes"][1]["categories"][6]["label"], "Hispanic");
    EXPECT_EQ(j["axes"][2]["categories"][8]["bin"], "70+");
}

}  // namespace
}  // namespace dwv
