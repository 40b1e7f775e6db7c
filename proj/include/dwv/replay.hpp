// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "dwv/session.hpp"

namespace dwv {

struct ReplayReport {
    std::size_t results_checked = 0;
    std::size_t images_checked = 0;
    /// Human-readable description of every difference found.
    std::vector<std::string> mismatches;

    bool identical() const noexcept { return mismatches.empty(); }
};

/// Re-runs a recorded session's baseline and edits (same prompt, seeds,
/// worldviews, samplers) and compares image ids, triples, targets and every
/// stored distribution bit for bit.
ReplayReport replay_session(const Session& recorded, const Pipeline& pipeline);

Json to_json(const ReplayReport& report);

}  // namespace dwv
