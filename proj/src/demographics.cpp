// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/demographics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dwv {

namespace {

constexpr std::array<std::string_view, 2> kGender = {"female", "male"};
constexpr std::array<std::string_view, 7> kRace = {
    "white", "black", "indian", "east_asian", "southeast_asian", "middle_eastern", "latino_hispanic"};
constexpr std::array<std::string_view, 9> kAge = {
    "age_0_2",   "age_3_9",   "age_10_19", "age_20_29",  "age_30_39",
    "age_40_49", "age_50_59", "age_60_69", "age_70_plus"};

constexpr std::array<std::string_view, 2> kGenderLabels = {"Female", "Male"};
constexpr std::array<std::string_view, 7> kRaceLabels = {
    "White", "Black", "Indian", "East Asian", "Southeast Asian", "Middle Eastern", "Hispanic"};
constexpr std::array<std::string_view, 9> kAgeBins = {
    "0-2", "3-9", "10-19", "20-29", "30-39", "40-49", "50-59", "60-69", "70+"};

std::size_t slot(Axis axis) noexcept { return static_cast<std::size_t>(axis); }

}  // namespace

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::AxisMismatch: return "AxisMismatch";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::MissingBaseline: return "MissingBaseline";
        case ErrorCode::UnknownCensusTable: return "UnknownCensusTable";
        case ErrorCode::InvalidWorldview: return "InvalidWorldview";
        case ErrorCode::BackendUnavailable: return "BackendUnavailable";
        case ErrorCode::InvalidRequest: return "InvalidRequest";
        case ErrorCode::PayloadUnreadable: return "PayloadUnreadable";
        case ErrorCode::NoFaceDetected: return "NoFaceDetected";
        case ErrorCode::EmptyPrompt: return "EmptyPrompt";
        case ErrorCode::UnknownSession: return "UnknownSession";
        case ErrorCode::UnknownJob: return "UnknownJob";
        case ErrorCode::UnknownImage: return "UnknownImage";
        case ErrorCode::JobAlreadyRunning: return "JobAlreadyRunning";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string_view axis_name(Axis axis) noexcept {
    switch (axis) {
        case Axis::gender: return "gender";
        case Axis::race: return "race";
        case Axis::age: return "age";
    }
    return "";
}

Axis parse_axis(std::string_view name) {
    for (Axis axis : kAxes) {
        if (axis_name(axis) == name) return axis;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown axis '" + std::string(name) + "'");
}

std::span<const std::string_view> axis_categories(Axis axis) noexcept {
    switch (axis) {
        case Axis::gender: return kGender;
        case Axis::race: return kRace;
        case Axis::age: return kAge;
    }
    return {};
}

std::size_t axis_size(Axis axis) noexcept { return axis_categories(axis).size(); }

std::optional<std::size_t> find_category(Axis axis, std::string_view id) noexcept {
    auto ids = axis_categories(axis);
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
}

std::size_t category_index(Axis axis, std::string_view id) {
    if (auto index = find_category(axis, id)) return *index;
    throw Error(ErrorCode::UnknownCategory,
                "'" + std::string(id) + "' is not a " + std::string(axis_name(axis)) + " category");
}

// ---------------------------------------------------------------------------
// CategoryRegistry

CategoryRegistry::CategoryRegistry() : CategoryRegistry(std::map<std::string, std::string>{}) {}

CategoryRegistry::CategoryRegistry(const std::map<std::string, std::string>& label_overrides) {
    auto fill = [](Axis axis, std::span<const std::string_view> labels, bool is_age) {
        std::vector<Category> out;
        auto ids = axis_categories(axis);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            out.push_back(Category{axis, std::string(ids[i]), std::string(labels[i]),
                                   is_age ? std::string(labels[i]) : std::string()});
        }
        return out;
    };
    axes_[0] = fill(Axis::gender, kGenderLabels, false);
    axes_[1] = fill(Axis::race, kRaceLabels, false);
    axes_[2] = fill(Axis::age, kAgeBins, true);

    for (const auto& [id, label] : label_overrides) {
        bool found = false;
        for (auto& axis : axes_) {
            for (auto& category : axis) {
                if (category.id == id) {
                    category.display_label = label;
                    found = true;
                }
            }
        }
        if (!found) {
            throw Error(ErrorCode::UnknownCategory, "label override for unknown category '" + id + "'");
        }
    }
}

const std::vector<Category>& CategoryRegistry::categories(Axis axis) const { return axes_[slot(axis)]; }

const Category& CategoryRegistry::category(Axis axis, std::string_view id) const {
    return axes_[slot(axis)][category_index(axis, id)];
}

const Category& CategoryRegistry::category(std::string_view id) const {
    for (Axis axis : kAxes) {
        if (auto index = find_category(axis, id)) return axes_[slot(axis)][*index];
    }
    throw Error(ErrorCode::UnknownCategory, "unknown category '" + std::string(id) + "'");
}

std::size_t CategoryRegistry::total_categories() const noexcept {
    return axes_[0].size() + axes_[1].size() + axes_[2].size();
}

// ---------------------------------------------------------------------------
// CategoryDistribution

CategoryDistribution::CategoryDistribution(Axis axis, std::vector<double> weights)
    : axis_(axis), weights_(std::move(weights)) {
    if (weights_.size() != axis_size(axis_)) {
        throw Error(ErrorCode::AxisMismatch, "distribution over " + std::string(axis_name(axis_)) +
                                                 " needs " + std::to_string(axis_size(axis_)) +
                                                 " weights, got " + std::to_string(weights_.size()));
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "non-finite weight");
        if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "negative weight in distribution");
        sum += w;
    }
    if (sum <= 0.0) throw Error(ErrorCode::AllZero, "distribution has no positive weight");
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
        for (double& w : weights_) w /= sum;
    }
}

CategoryDistribution CategoryDistribution::uniform(Axis axis) {
    const std::size_t k = axis_size(axis);
    return CategoryDistribution(axis, std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

CategoryDistribution CategoryDistribution::one_hot(Axis axis, std::string_view id) {
    std::vector<double> w(axis_size(axis), 0.0);
    w[category_index(axis, id)] = 1.0;
    return CategoryDistribution(axis, std::move(w));
}

double CategoryDistribution::weight(std::string_view id) const {
    return weights_[category_index(axis_, id)];
}

DistributionSet::DistributionSet(CategoryDistribution g, CategoryDistribution r, CategoryDistribution a)
    : gender(std::move(g)), race(std::move(r)), age(std::move(a)) {
    if (gender.axis() != Axis::gender || race.axis() != Axis::race || age.axis() != Axis::age) {
        throw Error(ErrorCode::AxisMismatch, "distribution set members must match their axis slots");
    }
}

const CategoryDistribution& DistributionSet::get(Axis axis) const noexcept {
    switch (axis) {
        case Axis::gender: return gender;
        case Axis::race: return race;
        case Axis::age: break;
    }
    return age;
}

ClassifierPrediction::ClassifierPrediction(DistributionSet probabilities)
    : probabilities_(std::move(probabilities)) {
    for (Axis axis : kAxes) top_[slot(axis)] = top_class_index(probabilities_.get(axis));
}

std::string_view ClassifierPrediction::top(Axis axis) const noexcept {
    return axis_categories(axis)[top_[slot(axis)]];
}

// ---------------------------------------------------------------------------
// Operations

CategoryDistribution make_distribution(Axis axis, const std::map<std::string, double>& weights) {
    std::vector<double> dense(axis_size(axis), 0.0);
    for (const auto& [id, w] : weights) {
        const std::size_t index = category_index(axis, id);
        if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "negative weight for '" + id + "'");
        dense[index] = w;
    }
    const double sum = std::accumulate(dense.begin(), dense.end(), 0.0);
    if (!(sum > 0.0)) {
        throw Error(ErrorCode::AllZero, "no positive weight on " + std::string(axis_name(axis)));
    }
    for (double& w : dense) w /= sum;
    return CategoryDistribution(axis, std::move(dense));
}

std::size_t top_class_index(const CategoryDistribution& pred) noexcept {
    auto w = pred.weights();
    // max_element returns the first maximum, which is the canonical tie rule.
    return static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
}

std::string_view top_class(const CategoryDistribution& pred) noexcept {
    return axis_categories(pred.axis())[top_class_index(pred)];
}

CategoryDistribution aggregate_top_class(std::span<const ClassifierPrediction> preds, Axis axis) {
    if (preds.empty()) throw Error(ErrorCode::EmptyInput, "cannot aggregate zero predictions");
    std::vector<std::size_t> counts(axis_size(axis), 0);
    for (const auto& pred : preds) ++counts[pred.top_index(axis)];
    std::vector<double> w(counts.size());
    const double n = static_cast<double>(preds.size());
    for (std::size_t i = 0; i < counts.size(); ++i) w[i] = static_cast<double>(counts[i]) / n;
    return CategoryDistribution(axis, std::move(w));
}

DistributionSet aggregate_top_class(std::span<const ClassifierPrediction> preds) {
    return DistributionSet(aggregate_top_class(preds, Axis::gender), aggregate_top_class(preds, Axis::race),
                           aggregate_top_class(preds, Axis::age));
}

double total_variation(const CategoryDistribution& p, const CategoryDistribution& q) {
    if (p.axis() != q.axis()) {
        throw Error(ErrorCode::AxisMismatch, "total variation across different axes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return 0.5 * sum;
}

std::map<std::string, double> expected_counts(const CategoryDistribution& p, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "expected_counts needs n >= 1");
    std::map<std::string, double> out;
    auto ids = axis_categories(p.axis());
    for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(std::string(ids[i]), static_cast<double>(n) * p[i]);
    return out;
}

DistributionSet uniform_set() {
    return DistributionSet(CategoryDistribution::uniform(Axis::gender), CategoryDistribution::uniform(Axis::race),
                           CategoryDistribution::uniform(Axis::age));
}

}  // namespace dwv
