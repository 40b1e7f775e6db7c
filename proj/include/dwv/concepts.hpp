// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "dwv/demographics.hpp"

namespace dwv {

/// Per-category phrase templates. A template may use the placeholders
/// `{label}` (display label, lowercased) and `{bin}` (canonical age bin).
class ConceptTemplateSet {
public:
    /// "{label} person" for gender and race, "{bin} year old person" for age.
    ConceptTemplateSet();

    /// Replaces the template for one category. Throws UnknownCategory.
    void set(std::string_view category_id, std::string phrase_template);
    const std::string& get(std::string_view category_id) const;
    const std::map<std::string, std::string, std::less<>>& templates() const noexcept { return templates_; }

private:
    std::map<std::string, std::string, std::less<>> templates_;
};

std::string concept_text(const Category& category, const ConceptTemplateSet& templates);

/// One concept per axis, applied together to a single image.
struct EditingTriple {
    std::array<std::string, 3> category_ids;  // indexed by Axis
    std::array<std::string, 3> concepts;

    const std::string& category(Axis axis) const { return category_ids[static_cast<std::size_t>(axis)]; }
    const std::string& concept_for(Axis axis) const { return concepts[static_cast<std::size_t>(axis)]; }

    bool operator==(const EditingTriple&) const = default;
};

/// Builds a triple from category ids, filling concepts from the templates.
EditingTriple make_triple(std::string_view gender, std::string_view race, std::string_view age,
                          const CategoryRegistry& registry, const ConceptTemplateSet& templates);

}  // namespace dwv
