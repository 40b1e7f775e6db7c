// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "dwv/classifier.hpp"
#include "dwv/digest.hpp"
#include "support.hpp"

namespace dwv {
namespace {

using testing::error_of;

GeneratedImage portrait(std::string_view g, std::string_view r, std::string_view a, std::uint64_t seed) {
    GeneratedImage img;
    img.payload = synthetic_payload("p", seed, Demographics{{std::string(g), std::string(r), std::string(a)}});
    img.record.id = sha256_hex(img.payload);
    img.record.seed = seed;
    return img;
}

TEST(Synthetic, NoiselessIsIdentity) {
    SyntheticClassifier clf(0.0);
    auto img = portrait("female", "black", "age_30_39", 1);
    auto out = clf.classify(img.record, img.payload);
    EXPECT_EQ(out.image_id, img.record.id);
    EXPECT_EQ(out.prediction.probabilities().gender, CategoryDistribution::one_hot(Axis::gender, "female"));
    EXPECT_EQ(out.prediction.probabilities().race, CategoryDistribution::one_hot(Axis::race, "black"));
    EXPECT_EQ(out.prediction.probabilities().age, CategoryDistribution::one_hot(Axis::age, "age_30_39"));
    EXPECT_EQ(out.faces_found, 1);
}

TEST(Synthetic, FullNoiseFlipsGender) {
    SyntheticClassifier clf(1.0, 3);
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto img = portrait(s % 2 ? "male" : "female", "white", "age_0_2", s);
        auto out = clf.classify(img.record, img.payload);
        EXPECT_EQ(out.prediction.top(Axis::gender), s % 2 ? "female" : "male");
        EXPECT_NE(out.prediction.top(Axis::race), "white");
        EXPECT_NE(out.prediction.top(Axis::age), "age_0_2");
    }
}

TEST(Synthetic, NoiseAccuracyWithinBinomialBound) {
    const double eps = 0.3, n = 10000;
    const double sigma = std::sqrt((1 - eps) * eps / n);
    const double lo = (1 - eps) - 3 * sigma, hi = (1 - eps) + 3 * sigma;
    ASSERT_NEAR(lo, 0.686252, 1e-6);
    ASSERT_GE(lo, 0.685);
    ASSERT_LE(hi, 0.715);

    SyntheticClassifier clf(eps, 8);
    std::array<std::size_t, 3> correct{};
    for (std::uint64_t s = 0; s < 10000; ++s) {
        auto img = portrait("male", "latino_hispanic", "age_50_59", s);
        auto out = clf.classify(img.record, img.payload);
        correct[0] += out.prediction.top(Axis::gender) == "male";
        correct[1] += out.prediction.top(Axis::race) == "latino_hispanic";
        correct[2] += out.prediction.top(Axis::age) == "age_50_59";
    }
    for (auto c : correct) {
        EXPECT_GE(c / n, 0.685);
        EXPECT_LE(c / n, 0.715);
    }
}

TEST(Synthetic, WrongLabelsAreUniformOverOthers) {
    SyntheticClassifier clf(1.0, 4);
    std::vector<std::size_t> hits(axis_size(Axis::race));
    const std::size_t n = 6000;
    for (std::uint64_t s = 0; s < n; ++s) {
        auto img = portrait("male", "white", "age_50_59", s);
        ++hits[clf.classify(img.record, img.payload).prediction.top_index(Axis::race)];
    }
    EXPECT_EQ(hits[0], 0u);
    // Each of 6 others ~ Binomial(n, 1/6); 4 sigma band.
    const double mean = n / 6.0, sigma = std::sqrt(n * (1 / 6.0) * (5 / 6.0));
    for (std::size_t k = 1; k < hits.size(); ++k) EXPECT_NEAR(hits[k], mean, 4 * sigma);
}

TEST(Synthetic, AxesCorruptIndependently) {
    // Changing the true gender never changes what is reported on race or age
    // for the same image id.
    SyntheticClassifier clf(0.5, 12);
    for (std::uint64_t s = 0; s < 500; ++s) {
        auto a = portrait("male", "indian", "age_10_19", s);
        auto b = portrait("female", "indian", "age_10_19", s);
        b.record.id = a.record.id;
        auto pa = clf.classify(a.record, a.payload).prediction;
        auto pb = clf.classify(b.record, b.payload).prediction;
        EXPECT_EQ(pa.top(Axis::race), pb.top(Axis::race));
        EXPECT_EQ(pa.top(Axis::age), pb.top(Axis::age));
    }
}

TEST(Synthetic, DeterministicPerImage) {
    SyntheticClassifier clf(0.4, 21);
    auto img = portrait("female", "east_asian", "age_3_9", 9);
    EXPECT_EQ(clf.classify(img.record, img.payload), clf.classify(img.record, img.payload));
}

TEST(Synthetic, InvalidNoiseAndPayload) {
    EXPECT_EQ(error_of([] { SyntheticClassifier(1.2); }), ErrorCode::OutOfRange);
    SyntheticClassifier clf;
    ImageRecord rec;
    rec.id = "x";
    EXPECT_EQ(error_of([&] { clf.classify(rec, "\x89PNG"); }), ErrorCode::PayloadUnreadable);
}

TEST(Batch, EmptyAndPartialFailure) {
    SyntheticClassifier clf;
    auto loader = [](const ImageRecord& r) -> std::optional<std::string> { return r.payload_ref; };
    EXPECT_TRUE(classify_batch(clf, std::vector<ImageRecord>{}, loader).empty());

    std::vector<ImageRecord> records;
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto img = portrait("female", "white", "age_20_29", s);
        img.record.payload_ref = s == 2 ? std::string("garbage") : img.payload;
        records.push_back(img.record);
    }
    auto out = classify_batch(clf, records, loader);
    ASSERT_EQ(out.size(), 5u);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_EQ(out[i].image_id, records[i].id);
        if (out[i].ok()) {
            ++ok;
            EXPECT_EQ(*out[i].result, clf.classify(records[i], records[i].payload_ref));
        } else {
            EXPECT_EQ(out[i].error_code, ErrorCode::PayloadUnreadable);
            EXPECT_EQ(i, 2u);
        }
    }
    EXPECT_EQ(ok, 4u);
}

}  // namespace
}  // namespace dwv
