// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dwv/concepts.hpp"
#include "dwv/demographics.hpp"
#include "dwv/rng.hpp"

namespace dwv {

enum class SamplerMode { stochastic, quota };

std::string_view sampler_name(SamplerMode mode) noexcept;
SamplerMode parse_sampler(std::string_view name);

/// Independent weighted draws, one category per axis per image, drawn in
/// gender, race, age order.
std::vector<EditingTriple> sample_triples(const DistributionSet& target, std::size_t n, Rng& rng,
                                          const CategoryRegistry& registry, const ConceptTemplateSet& templates);

/// Largest-remainder integer allocation of n over the distribution. Remainder
/// ties go to the canonically first category.
std::vector<std::size_t> largest_remainder_counts(const CategoryDistribution& target, std::size_t n);

/// Fixed per-axis counts from largest_remainder_counts, assigned to image slots
/// by a seeded shuffle per axis (gender, race, age order).
std::vector<EditingTriple> quota_triples(const DistributionSet& target, std::size_t n, Rng& rng,
                                         const CategoryRegistry& registry, const ConceptTemplateSet& templates);

std::vector<EditingTriple> draw_triples(SamplerMode mode, const DistributionSet& target, std::size_t n, Rng& rng,
                                        const CategoryRegistry& registry, const ConceptTemplateSet& templates);

}  // namespace dwv
