// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dwv/error.hpp"

namespace dwv {

/// The three demographic axes. Declaration order is the canonical axis order
/// used everywhere (sampling draw order, report blocks, serialization).
enum class Axis { gender = 0, race = 1, age = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::gender, Axis::race, Axis::age};

std::string_view axis_name(Axis axis) noexcept;
Axis parse_axis(std::string_view name);

/// Canonical category ids of an axis, in canonical order.
std::span<const std::string_view> axis_categories(Axis axis) noexcept;
std::size_t axis_size(Axis axis) noexcept;

/// Index of `id` within the axis, or nullopt.
std::optional<std::size_t> find_category(Axis axis, std::string_view id) noexcept;
std::size_t category_index(Axis axis, std::string_view id);

struct Category {
    Axis axis;
    std::string id;
    std::string display_label;
    /// Canonical bin label for age categories ("30-39", "70+"); empty otherwise.
    std::string bin;
};

/// Category scheme with configurable display labels. The ids and their order
/// are fixed; only the surface labels may be overridden.
class CategoryRegistry {
public:
    CategoryRegistry();
    explicit CategoryRegistry(const std::map<std::string, std::string>& label_overrides);

    const std::vector<Category>& categories(Axis axis) const;
    const Category& category(Axis axis, std::string_view id) const;
    /// Looks the id up across all axes.
    const Category& category(std::string_view id) const;
    std::size_t total_categories() const noexcept;

private:
    std::array<std::vector<Category>, 3> axes_;
};

/// Probability vector over one axis, dense and in canonical order.
class CategoryDistribution {
public:
    /// Validates and, if the sum is off by more than 1e-9, renormalizes.
    CategoryDistribution(Axis axis, std::vector<double> weights);

    static CategoryDistribution uniform(Axis axis);
    static CategoryDistribution one_hot(Axis axis, std::string_view id);

    Axis axis() const noexcept { return axis_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double operator[](std::size_t index) const { return weights_.at(index); }
    double weight(std::string_view id) const;
    std::size_t size() const noexcept { return weights_.size(); }

    bool operator==(const CategoryDistribution&) const = default;

private:
    Axis axis_;
    std::vector<double> weights_;
};

inline constexpr double kNormalizationTolerance = 1e-9;

struct DistributionSet {
    CategoryDistribution gender;
    CategoryDistribution race;
    CategoryDistribution age;

    DistributionSet(CategoryDistribution g, CategoryDistribution r, CategoryDistribution a);

    const CategoryDistribution& get(Axis axis) const noexcept;
    bool operator==(const DistributionSet&) const = default;
};

/// Per-axis probability vectors from a classifier plus the top class of each.
class ClassifierPrediction {
public:
    explicit ClassifierPrediction(DistributionSet probabilities);

    const DistributionSet& probabilities() const noexcept { return probabilities_; }
    std::size_t top_index(Axis axis) const noexcept { return top_[static_cast<std::size_t>(axis)]; }
    std::string_view top(Axis axis) const noexcept;

    bool operator==(const ClassifierPrediction&) const = default;

private:
    DistributionSet probabilities_;
    std::array<std::size_t, 3> top_;
};

CategoryDistribution make_distribution(Axis axis, const std::map<std::string, double>& weights);

/// Argmax with ties going to the canonically first category.
std::size_t top_class_index(const CategoryDistribution& pred) noexcept;
std::string_view top_class(const CategoryDistribution& pred) noexcept;

CategoryDistribution aggregate_top_class(std::span<const ClassifierPrediction> preds, Axis axis);
DistributionSet aggregate_top_class(std::span<const ClassifierPrediction> preds);

double total_variation(const CategoryDistribution& p, const CategoryDistribution& q);

std::map<std::string, double> expected_counts(const CategoryDistribution& p, std::size_t n);

DistributionSet uniform_set();

}  // namespace dwv
