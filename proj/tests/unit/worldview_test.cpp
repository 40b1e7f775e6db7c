// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "dwv/worldview.hpp"
#include "support.hpp"

namespace dwv {
namespace {

using testing::error_of;

std::map<Axis, std::set<std::string>> sample_selection() {
    return {{Axis::gender, {"female"}}, {Axis::race, {"black"}}, {Axis::age, {"age_30_39", "age_40_49"}}};
}

DistributionSet random_set(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto one = [&](Axis axis) {
        std::vector<double> w(axis_size(axis));
        for (auto& x : w) x = u(gen);
        w[gen() % w.size()] += 0.1;
        return CategoryDistribution(axis, w);
    };
    return DistributionSet(one(Axis::gender), one(Axis::race), one(Axis::age));
}

TEST(Parity, UniformOnEveryAxis) {
    auto p = parity_target();
    EXPECT_EQ(p.gender.weight("female"), 0.5);
    EXPECT_EQ(p.gender.weight("male"), 0.5);
    for (double w : p.race.weights()) EXPECT_EQ(w, 1.0 / 7.0);
    for (double w : p.age.weights()) EXPECT_EQ(w, 1.0 / 9.0);
}

TEST(Census, PinnedGenderShares) {
    auto t = census_target(us2020_census_table());
    EXPECT_NEAR(t.gender.weight("female"), 0.508, 1e-12);
    EXPECT_NEAR(t.gender.weight("male"), 0.492, 1e-12);
}

TEST(Census, EveryAxisSumsToOneAndTableCarriesCitation) {
    auto table = us2020_census_table();
    EXPECT_FALSE(table.source.empty());
    EXPECT_GT(table.vintage, 2000);
    for (Axis axis : kAxes) {
        double sum = 0;
        for (double w : table.distributions.get(axis).weights()) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Census, CatalogResolution) {
    auto catalog = CensusCatalog::builtin();
    EXPECT_EQ(catalog.find("").id, catalog.default_id());
    EXPECT_EQ(catalog.find("us2020").id, "us2020");
    EXPECT_EQ(error_of([&] { catalog.find("atlantis"); }), ErrorCode::UnknownCensusTable);
    EXPECT_EQ(error_of([&] { target_for(WorldviewSpec::census("atlantis"), std::nullopt, catalog); }),
              ErrorCode::UnknownCensusTable);
}

TEST(Absolute, FemaleBlackTwoAgeBins) {
    auto t = absolute_target(sample_selection());
    EXPECT_EQ(t.gender, CategoryDistribution::one_hot(Axis::gender, "female"));
    EXPECT_EQ(t.race, CategoryDistribution::one_hot(Axis::race, "black"));
    for (auto id : axis_categories(Axis::age))
        EXPECT_EQ(t.age.weight(id), (id == "age_30_39" || id == "age_40_49") ? 0.5 : 0.0);
}

TEST(Absolute, EverythingSelectedIsParity) {
    std::map<Axis, std::set<std::string>> all;
    for (Axis axis : kAxes)
        for (auto id : axis_categories(axis)) all[axis].insert(std::string(id));
    EXPECT_EQ(absolute_target(all), parity_target());
}

TEST(Absolute, Errors) {
    auto sel = sample_selection();
    sel[Axis::gender].clear();
    EXPECT_EQ(error_of([&] { absolute_target(sel); }), ErrorCode::EmptySelection);
    sel = sample_selection();
    sel.erase(Axis::age);
    EXPECT_EQ(error_of([&] { absolute_target(sel); }), ErrorCode::EmptySelection);
    sel = sample_selection();
    sel[Axis::race].insert("female");
    EXPECT_EQ(error_of([&] { absolute_target(sel); }), ErrorCode::UnknownCategory);
}

TEST(Relative, Endpoints) {
    auto baseline = DistributionSet(make_distribution(Axis::gender, {{"female", 1}, {"male", 3}}),
                                    CategoryDistribution::one_hot(Axis::race, "white"),
                                    CategoryDistribution::one_hot(Axis::age, "age_20_29"));
    EXPECT_EQ(relative_target(baseline, 0.0), baseline);
    EXPECT_EQ(relative_target(baseline, 1.0), parity_target());
}

TEST(Relative, HalfwayGender) {
    auto baseline = DistributionSet(make_distribution(Axis::gender, {{"female", 1}, {"male", 3}}),
                                    CategoryDistribution::uniform(Axis::race), CategoryDistribution::uniform(Axis::age));
    auto t = relative_target(baseline, 0.5);
    EXPECT_NEAR(t.gender.weight("female"), 0.375, 1e-15);
    EXPECT_NEAR(t.gender.weight("male"), 0.625, 1e-15);
}

TEST(Relative, SliderValueFromTheEditorExample) {
    auto baseline = DistributionSet(make_distribution(Axis::gender, {{"female", 1}, {"male", 3}}),
                                    CategoryDistribution::uniform(Axis::race), CategoryDistribution::uniform(Axis::age));
    auto t = relative_target(baseline, 0.82);
    // Oracle: (1 - t) * b + t * u.
    EXPECT_NEAR(t.gender.weight("female"), 0.18 * 0.25 + 0.82 * 0.5, 1e-12);
    EXPECT_NEAR(t.gender.weight("female"), 0.455, 1e-12);
}

TEST(Relative, OutOfRange) {
    auto b = parity_target();
    EXPECT_EQ(error_of([&] { relative_target(b, -0.01); }), ErrorCode::OutOfRange);
    EXPECT_EQ(error_of([&] { relative_target(b, 1.01); }), ErrorCode::OutOfRange);
    EXPECT_EQ(error_of([&] { WorldviewSpec::relative(2.0).validate(); }), ErrorCode::OutOfRange);
}

TEST(TargetFor, Dispatch) {
    auto catalog = CensusCatalog::builtin();
    EXPECT_EQ(target_for(WorldviewSpec::parity(), std::nullopt, catalog), parity_target());
    EXPECT_EQ(target_for(WorldviewSpec::absolute(sample_selection()), std::nullopt, catalog),
              absolute_target(sample_selection()));
    EXPECT_EQ(target_for(WorldviewSpec::census(), std::nullopt, catalog), census_target(us2020_census_table()));
    EXPECT_EQ(error_of([&] { target_for(WorldviewSpec::relative(0.3), std::nullopt, catalog); }),
              ErrorCode::MissingBaseline);
    auto b = census_target(us2020_census_table());
    EXPECT_EQ(target_for(WorldviewSpec::relative(0.3), b, catalog), relative_target(b, 0.3));
}

TEST(TargetFor, BaselineIgnoredOutsideRelative) {
    auto catalog = CensusCatalog::builtin();
    auto b = census_target(us2020_census_table());
    EXPECT_EQ(target_for(WorldviewSpec::parity(), b, catalog), parity_target());
}

TEST(RelativeProperty, PointwiseLinearAndBetweenEndpoints) {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    auto u = parity_target();
    for (int trial = 0; trial < 1000; ++trial) {
        auto b = random_set(gen);
        double t = ut(gen);
        auto r = relative_target(b, t);
        for (Axis axis : kAxes)
            for (std::size_t k = 0; k < axis_size(axis); ++k) {
                double bk = b.get(axis)[k], uk = u.get(axis)[k], rk = r.get(axis)[k];
                EXPECT_NEAR(rk, (1 - t) * bk + t * uk, 1e-12);
                EXPECT_GE(rk, std::min(bk, uk) - 1e-12);
                EXPECT_LE(rk, std::max(bk, uk) + 1e-12);
            }
        // Distance to parity shrinks linearly in t.
        for (Axis axis : kAxes)
            EXPECT_NEAR(total_variation(r.get(axis), u.get(axis)),
                        (1 - t) * total_variation(b.get(axis), u.get(axis)), 1e-12);
    }
}

TEST(WorldviewText, ParseExamples) {
    EXPECT_EQ(parse_worldview("parity"), WorldviewSpec::parity());
    EXPECT_EQ(parse_worldview("census"), WorldviewSpec::census());
    EXPECT_EQ(parse_worldview("census:us2020"), WorldviewSpec::census("us2020"));
    EXPECT_EQ(parse_worldview("relative:t=0.82"), WorldviewSpec::relative(0.82));
    EXPECT_EQ(parse_worldview("absolute:gender=female;race=black;age=age_30_39,age_40_49"),
              WorldviewSpec::absolute(sample_selection()));
}

TEST(WorldviewText, Malformed) {
    for (auto text : {"", "paritee", "relative", "relative:t=abc", "absolute:gender=female",
                      "absolute:gender=female;race=black;age=", "absolute:colour=red"}) {
        auto code = error_of([&] { parse_worldview(text); });
        ASSERT_TRUE(code.has_value()) << text;
        EXPECT_TRUE(*code == ErrorCode::InvalidWorldview || *code == ErrorCode::EmptySelection ||
                    *code == ErrorCode::UnknownCategory)
            << text;
    }
    EXPECT_EQ(error_of([] { parse_worldview("relative:t=1.5"); }), ErrorCode::OutOfRange);
}

TEST(WorldviewTextProperty, RoundTrip) {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        WorldviewSpec spec;
        switch (trial % 4) {
            case 0: spec = WorldviewSpec::parity(); break;
            case 1: spec = WorldviewSpec::census(trial % 8 == 1 ? "" : "us2020"); break;
            case 2: spec = WorldviewSpec::relative(ut(gen)); break;
            default: {
                std::map<Axis, std::set<std::string>> sel;
                for (Axis axis : kAxes) {
                    auto ids = axis_categories(axis);
                    sel[axis].insert(std::string(ids[gen() % ids.size()]));
                    if (gen() % 2) sel[axis].insert(std::string(ids[gen() % ids.size()]));
                }
                spec = WorldviewSpec::absolute(sel);
            }
        }
        auto text = format_worldview(spec);
        EXPECT_EQ(parse_worldview(text), spec) << text;
        EXPECT_EQ(format_worldview(parse_worldview(text)), text);
    }
}

}  // namespace
}  // namespace dwv
