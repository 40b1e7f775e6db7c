// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace dwv {

std::string_view sampler_name(SamplerMode mode) noexcept {
    return mode == SamplerMode::quota ? "quota" : "stochastic";
}

SamplerMode parse_sampler(std::string_view name) {
    if (name == "stochastic") return SamplerMode::stochastic;
    if (name == "quota") return SamplerMode::quota;
    throw Error(ErrorCode::InvalidArgument, "unknown sampler '" + std::string(name) + "'");
}

std::vector<EditingTriple> sample_triples(const DistributionSet& target, std::size_t n, Rng& rng,
                                          const CategoryRegistry& registry, const ConceptTemplateSet& templates) {
    std::vector<EditingTriple> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::array<std::string_view, 3> ids;
        for (Axis axis : kAxes) {
            const auto& dist = target.get(axis);
            ids[static_cast<std::size_t>(axis)] = axis_categories(axis)[rng.categorical(dist.weights())];
        }
        out.push_back(make_triple(ids[0], ids[1], ids[2], registry, templates));
    }
    return out;
}

std::vector<std::size_t> largest_remainder_counts(const CategoryDistribution& target, std::size_t n) {
    const std::size_t k = target.size();
    std::vector<std::size_t> counts(k);
    std::vector<double> remainders(k);
    std::size_t allocated = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double exact = static_cast<double>(n) * target[i];
        const double floor = std::floor(exact);
        counts[i] = static_cast<std::size_t>(floor);
        remainders[i] = exact - floor;
        allocated += counts[i];
    }
    // Floating error can push the floor sum past n on near-integer inputs.
    while (allocated > n) {
        auto it = std::max_element(counts.begin(), counts.end());
        --*it;
        --allocated;
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t j = 0; allocated < n; j = (j + 1) % k) {
        // Skip categories with zero mass so they never receive a quota.
        if (target[order[j]] <= 0.0) continue;
        ++counts[order[j]];
        ++allocated;
    }
    return counts;
}

std::vector<EditingTriple> quota_triples(const DistributionSet& target, std::size_t n, Rng& rng,
                                         const CategoryRegistry& registry, const ConceptTemplateSet& templates) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "quota sampling needs n >= 1");
    std::array<std::vector<std::size_t>, 3> slots;
    for (Axis axis : kAxes) {
        auto& assigned = slots[static_cast<std::size_t>(axis)];
        const auto counts = largest_remainder_counts(target.get(axis), n);
        for (std::size_t c = 0; c < counts.size(); ++c) assigned.insert(assigned.end(), counts[c], c);
        // Fisher-Yates with the portable bounded draw.
        for (std::size_t i = assigned.size(); i > 1; --i) {
            std::swap(assigned[i - 1], assigned[rng.below(i)]);
        }
    }
    std::vector<EditingTriple> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(make_triple(axis_categories(Axis::gender)[slots[0][i]], axis_categories(Axis::race)[slots[1][i]],
                                  axis_categories(Axis::age)[slots[2][i]], registry, templates));
    }
    return out;
}

std::vector<EditingTriple> draw_triples(SamplerMode mode, const DistributionSet& target, std::size_t n, Rng& rng,
                                        const CategoryRegistry& registry, const ConceptTemplateSet& templates) {
    if (mode == SamplerMode::quota) return quota_triples(target, n, rng, registry, templates);
    return sample_triples(target, n, rng, registry, templates);
}

}  // namespace dwv
