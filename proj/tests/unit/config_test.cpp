// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>

#include "dwv/config.hpp"
#include "dwv/digest.hpp"
#include "support.hpp"

namespace dwv {
namespace {

using testing::error_of;

TEST(Config, Defaults) {
    auto c = Config::defaults();
    EXPECT_EQ(c.service.port, 8080);
    EXPECT_EQ(c.service.workers, 2u);
    EXPECT_TRUE(c.backends.generator_url.empty());
    EXPECT_EQ(c.census.default_id(), "us2020");
    EXPECT_EQ(c.synthetic.classifier_noise, 0.0);
    EXPECT_EQ(c.hash, sha256_hex("null"));
}

TEST(Config, ExampleFileLoads) {
    auto c = Config::load(std::filesystem::path(DWV_SOURCE_DIR) / "config" / "example.yaml");
    ASSERT_EQ(c.synthetic.profiles.size(), 2u);
    EXPECT_EQ(c.synthetic.profiles[0].name, "software-engineer");
    EXPECT_DOUBLE_EQ(c.synthetic.profiles[0].base.gender.weight("male"), 0.8);
    EXPECT_EQ(c.synthetic.profiles[1].edit_success, 0.8);
    EXPECT_EQ(c.census.find("example_city").vintage, 2024);
    EXPECT_EQ(c.census.find("").id, "us2020");
    EXPECT_EQ(c.hash.size(), 64u);
}

TEST(Config, SectionsOverlayDefaults) {
    auto c = Config::parse(R"(
service: {port: 9999}
labels: {latino_hispanic: Latino}
concepts: {male: "a {label} adult"}
synthetic:
  classifier_noise: 0.25
  edit_success: 0.5
guidance:
  strength: {race: 2.5}
)");
    EXPECT_EQ(c.service.port, 9999);
    EXPECT_EQ(c.service.workers, 2u);
    EXPECT_EQ(c.registry.category("latino_hispanic").display_label, "Latino");
    EXPECT_EQ(concept_text(c.registry.category("male"), c.templates), "a male adult");
    EXPECT_EQ(c.synthetic.classifier_noise, 0.25);
    EXPECT_EQ(c.synthetic.default_profile.edit_success, 0.5);
    EXPECT_EQ(c.guidance.strength[1], 2.5);
    EXPECT_EQ(c.guidance.strength[0], 1.0);
}

TEST(Config, HashIsStableAcrossFormatting) {
    auto a = Config::parse("service: {port: 1234}\n");
    auto b = Config::parse("# comment\nservice:\n  port: 1234\n");
    auto c = Config::parse("service: {port: 1235}\n");
    EXPECT_EQ(a.hash, b.hash);
    EXPECT_NE(a.hash, c.hash);
}

TEST(Config, Errors) {
    EXPECT_EQ(error_of([] { Config::parse("service: [1, 2"); }), ErrorCode::ConfigError);
    EXPECT_EQ(error_of([] { Config::parse("labels: {robot: R2}"); }), ErrorCode::ConfigError);
    EXPECT_EQ(error_of([] { Config::parse("synthetic: {classifier_noise: 2}"); }), ErrorCode::ConfigError);
    EXPECT_EQ(error_of([] { Config::parse("census: {default: nowhere}"); }), ErrorCode::ConfigError);
    EXPECT_EQ(error_of([] { Config::parse("synthetic: {profiles: [{name: x}]}"); }), ErrorCode::ConfigError);
    EXPECT_EQ(error_of([] { Config::load("/nonexistent/dwv.yaml"); }), ErrorCode::IoError);
}

TEST(Config, EnvironmentOverrides) {
    ::setenv("DWV_PORT", "7070", 1);
    ::setenv("DWV_STORE", "/tmp/dwv-env-store", 1);
    auto c = Config::defaults();
    c.apply_environment();
    ::unsetenv("DWV_PORT");
    ::unsetenv("DWV_STORE");
    EXPECT_EQ(c.service.port, 7070);
    EXPECT_EQ(c.service.store, "/tmp/dwv-env-store");
}

}  // namespace
}  // namespace dwv
