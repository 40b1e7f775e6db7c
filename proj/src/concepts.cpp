// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/concepts.hpp"

#include <algorithm>
#include <cctype>

namespace dwv {

namespace {

void replace_all(std::string& text, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
}

}  // namespace

ConceptTemplateSet::ConceptTemplateSet() {
    for (Axis axis : kAxes) {
        for (std::string_view id : axis_categories(axis)) {
            templates_.emplace(std::string(id), axis == Axis::age ? "{bin} year old person" : "{label} person");
        }
    }
}

void ConceptTemplateSet::set(std::string_view category_id, std::string phrase_template) {
    auto it = templates_.find(category_id);
    if (it == templates_.end()) {
        throw Error(ErrorCode::UnknownCategory, "template for unknown category '" + std::string(category_id) + "'");
    }
    it->second = std::move(phrase_template);
}

const std::string& ConceptTemplateSet::get(std::string_view category_id) const {
    auto it = templates_.find(category_id);
    if (it == templates_.end()) {
        throw Error(ErrorCode::UnknownCategory, "no template for '" + std::string(category_id) + "'");
    }
    return it->second;
}

std::string concept_text(const Category& category, const ConceptTemplateSet& templates) {
    std::string label = category.display_label;
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::string phrase = templates.get(category.id);
    replace_all(phrase, "{label}", label);
    replace_all(phrase, "{bin}", category.bin);
    return phrase;
}

EditingTriple make_triple(std::string_view gender, std::string_view race, std::string_view age,
                          const CategoryRegistry& registry, const ConceptTemplateSet& templates) {
    EditingTriple triple;
    const std::array<std::string_view, 3> ids = {gender, race, age};
    for (Axis axis : kAxes) {
        const auto slot = static_cast<std::size_t>(axis);
        const Category& category = registry.category(axis, ids[slot]);
        triple.category_ids[slot] = category.id;
        triple.concepts[slot] = concept_text(category, templates);
    }
    return triple;
}

}  // namespace dwv
