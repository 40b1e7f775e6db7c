// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "dwv/concepts.hpp"
#include "support.hpp"

namespace dwv {
namespace {

using testing::error_of;

TEST(ConceptText, Examples) {
    CategoryRegistry reg;
    ConceptTemplateSet templates;
    EXPECT_EQ(concept_text(reg.category("female"), templates), "female person");
    EXPECT_EQ(concept_text(reg.category("black"), templates), "black person");
    EXPECT_EQ(concept_text(reg.category("age_0_2"), templates), "0-2 year old person");
    EXPECT_EQ(concept_text(reg.category("age_70_plus"), templates), "70+ year old person");
    EXPECT_EQ(concept_text(reg.category("latino_hispanic"), templates), "hispanic person");
    EXPECT_EQ(concept_text(reg.category("east_asian"), templates), "east asian person");
}

TEST(ConceptText, LabelOverrideFlowsIntoConcept) {
    CategoryRegistry reg(std::map<std::string, std::string>{{"latino_hispanic", "Latino"}});
    EXPECT_EQ(concept_text(reg.category("latino_hispanic"), ConceptTemplateSet()), "latino person");
}

TEST(ConceptTemplates, EveryCategoryHasATemplate) {
    ConceptTemplateSet templates;
    EXPECT_EQ(templates.templates().size(), 18u);
    for (Axis axis : kAxes)
        for (auto id : axis_categories(axis)) EXPECT_FALSE(templates.get(id).empty());
}

TEST(ConceptTemplates, OverrideAndUnknown) {
    ConceptTemplateSet templates;
    templates.set("male", "a {label} individual");
    CategoryRegistry reg;
    EXPECT_EQ(concept_text(reg.category("male"), templates), "a male individual");
    EXPECT_EQ(error_of([&] { templates.set("robot", "x"); }), ErrorCode::UnknownCategory);
}

TEST(Triple, ConceptsMatchConceptText) {
    CategoryRegistry reg;
    ConceptTemplateSet templates;
    for (auto g : axis_categories(Axis::gender))
        for (auto r : axis_categories(Axis::race))
            for (auto a : axis_categories(Axis::age)) {
                auto t = make_triple(g, r, a, reg, templates);
                for (Axis axis : kAxes)
                    EXPECT_EQ(t.concept_for(axis), concept_text(reg.category(axis, t.category(axis)), templates));
            }
}

TEST(Triple, RejectsWrongAxis) {
    CategoryRegistry reg;
    ConceptTemplateSet templates;
    EXPECT_EQ(error_of([&] { make_triple("white", "black", "age_0_2", reg, templates); }),
              ErrorCode::UnknownCategory);
}

}  // namespace
}  // namespace dwv
