// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dwv/pipeline.hpp"

namespace dwv {

struct AuditOptions {
    std::vector<std::string> prompts;
    std::vector<WorldviewSpec> worldviews;
    std::size_t count = kDefaultImageCount;
    std::uint64_t seed = 0;
    SamplerMode sampler = SamplerMode::stochastic;
};

/// One prompt x worldview cell. TV arrays are indexed by Axis.
struct AuditRow {
    std::string prompt;
    WorldviewSpec worldview;
    std::uint64_t seed = 0;
    std::optional<DistributionSet> baseline;
    std::optional<DistributionSet> target;
    std::optional<DistributionSet> edited;
    std::array<double, 3> tv_baseline_target{};
    std::array<double, 3> tv_edited_target{};
    std::optional<std::string> error;
};

struct AuditProvenance {
    std::size_t count = 0;
    std::uint64_t seed = 0;
    SamplerMode sampler = SamplerMode::stochastic;
    std::string generator;
    std::string classifier;
    std::string config_hash;
};

struct AuditReport {
    AuditProvenance provenance;
    /// Prompt-major, then worldview, in input order.
    std::vector<AuditRow> rows;

    bool all_ok() const noexcept;
};

enum class ReportFormat { table, structured };

ReportFormat parse_report_format(std::string_view name);

/// Reads one prompt per line, skipping blank lines. Throws InvalidArgument
/// when no prompt remains and IoError when the file cannot be read.
std::vector<std::string> read_prompts(const std::filesystem::path& path);

/// Backend failures are recorded on the affected rows; the run continues.
/// Prompts are processed concurrently up to the configured worker count.
AuditReport run_audit(const AuditOptions& options, const Pipeline& pipeline);

/// Deterministic rendering; rows appear in report order and axes in
/// canonical order. The structured form is JSON keyed by canonical ids.
std::string render_report(const AuditReport& report, ReportFormat format);

}  // namespace dwv
