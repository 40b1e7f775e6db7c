// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/audit.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace dwv {

namespace {

std::string fixed(double value, int digits) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << value;
    return out.str();
}

Json tv_json(const std::array<double, 3>& tv) {
    Json out = Json::object();
    for (Axis axis : kAxes) out[std::string(axis_name(axis))] = tv[static_cast<std::size_t>(axis)];
    return out;
}

std::vector<AuditRow> audit_prompt(const std::string& prompt, const AuditOptions& options, const Pipeline& pipeline) {
    std::vector<AuditRow> rows;
    for (const auto& worldview : options.worldviews) {
        AuditRow row;
        row.prompt = prompt;
        row.worldview = worldview;
        row.seed = options.seed;
        rows.push_back(std::move(row));
    }

    std::optional<GenerationResult> baseline;
    try {
        baseline = pipeline.run_baseline(prompt, options.count, options.seed);
    } catch (const std::exception& e) {
        for (auto& row : rows) row.error = std::string("baseline: ") + e.what();
        return rows;
    }

    for (auto& row : rows) {
        row.baseline = baseline->aggregated;
        try {
            // Edits reuse the baseline seed, so image i of the edit starts from
            // the same draw as baseline image i.
            EditResult edit = pipeline.run_edit(prompt, row.worldview, row.baseline, options.count, options.seed,
                                                options.sampler);
            row.target = edit.target;
            row.edited = edit.generation.aggregated;
            for (Axis axis : kAxes) {
                const auto slot = static_cast<std::size_t>(axis);
                row.tv_baseline_target[slot] = total_variation(row.baseline->get(axis), row.target->get(axis));
                row.tv_edited_target[slot] = total_variation(row.edited->get(axis), row.target->get(axis));
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    return rows;
}

std::string render_structured(const AuditReport& report) {
    const auto& p = report.provenance;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r{{"prompt", row.prompt},
               {"worldview", format_worldview(row.worldview)},
               {"worldview_spec", to_json(row.worldview)},
               {"seed", row.seed},
               {"status", row.error ? "error" : "ok"},
               {"error", row.error ? Json(*row.error) : Json(nullptr)},
               {"baseline", row.baseline ? to_json(*row.baseline) : Json(nullptr)},
               {"target", row.target ? to_json(*row.target) : Json(nullptr)},
               {"edited", row.edited ? to_json(*row.edited) : Json(nullptr)}};
        if (row.error) {
            r["tv"] = nullptr;
        } else {
            r["tv"] = Json{{"baseline_target", tv_json(row.tv_baseline_target)},
                           {"edited_target", tv_json(row.tv_edited_target)}};
        }
        rows.push_back(std::move(r));
    }
    const Json doc{{"format", "dwv-audit/1"},
                   {"provenance",
                    {{"count", p.count},
                     {"seed", p.seed},
                     {"sampler", sampler_name(p.sampler)},
                     {"generator", p.generator},
                     {"classifier", p.classifier},
                     {"config_hash", p.config_hash}}},
                   {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

std::string render_table(const AuditReport& report) {
    constexpr std::size_t kMaxPrompt = 48;
    const auto& p = report.provenance;
    std::size_t prompt_width = 6;
    std::size_t worldview_width = 9;
    for (const auto& row : report.rows) {
        prompt_width = std::max(prompt_width, std::min(row.prompt.size(), kMaxPrompt));
        worldview_width = std::max(worldview_width, format_worldview(row.worldview).size());
    }
    const auto pw = static_cast<int>(prompt_width);
    const auto ww = static_cast<int>(worldview_width);

    std::ostringstream out;
    out << "# dwv audit  count=" << p.count << "  seed=" << p.seed << "  sampler=" << sampler_name(p.sampler)
        << "  generator=" << p.generator << "  classifier=" << p.classifier << "  config=" << p.config_hash.substr(0, 12)
        << '\n';
    out << std::left << std::setw(pw) << "prompt" << "  " << std::setw(ww) << "worldview" << "  " << std::setw(12)
        << "tv_base_tgt" << "  " << std::setw(12) << "tv_edit_tgt" << "  " << "status" << '\n';
    if (report.rows.empty()) return out.str();
    for (Axis axis : kAxes) {
        const auto slot = static_cast<std::size_t>(axis);
        out << "\n[" << axis_name(axis) << "]\n";
        for (const auto& row : report.rows) {
            const std::string prompt =
                row.prompt.size() > kMaxPrompt ? row.prompt.substr(0, kMaxPrompt - 3) + "..." : row.prompt;
            out << std::setw(pw) << prompt << "  " << std::setw(ww) << format_worldview(row.worldview) << "  ";
            if (row.error) {
                out << std::setw(12) << "-" << "  " << std::setw(12) << "-" << "  error: " << *row.error << '\n';
            } else {
                out << std::setw(12) << fixed(row.tv_baseline_target[slot], 4) << "  " << std::setw(12)
                    << fixed(row.tv_edited_target[slot], 4) << "  ok\n";
            }
        }
    }
    return out.str();
}

}  // namespace

bool AuditReport::all_ok() const noexcept {
    for (const auto& row : rows) {
        if (row.error) return false;
    }
    return true;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "table") return ReportFormat::table;
    if (name == "structured" || name == "json") return ReportFormat::structured;
    throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(name) + "'");
}

std::vector<std::string> read_prompts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read prompt file " + path.string());
    std::vector<std::string> prompts;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        prompts.push_back(line.substr(first, last - first + 1));
    }
    if (prompts.empty()) throw Error(ErrorCode::InvalidArgument, "prompt file " + path.string() + " has no prompts");
    return prompts;
}

AuditReport run_audit(const AuditOptions& options, const Pipeline& pipeline) {
    if (options.prompts.empty()) throw Error(ErrorCode::InvalidArgument, "audit needs at least one prompt");
    if (options.worldviews.empty()) throw Error(ErrorCode::InvalidArgument, "audit needs at least one worldview");
    if (options.count == 0) throw Error(ErrorCode::InvalidArgument, "count must be positive");
    for (const auto& w : options.worldviews) w.validate();

    AuditReport report;
    report.provenance = AuditProvenance{options.count,
                                        options.seed,
                                        options.sampler,
                                        pipeline.backends().generator->descriptor().id,
                                        pipeline.backends().classifier->descriptor().id,
                                        pipeline.config().hash};

    std::vector<std::vector<AuditRow>> per_prompt(options.prompts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < options.prompts.size(); i = next++) {
            per_prompt[i] = audit_prompt(options.prompts[i], options, pipeline);
        }
    };
    const std::size_t threads = std::min(pipeline.config().service.workers, options.prompts.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (auto& rows : per_prompt) {
        for (auto& row : rows) report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_report(const AuditReport& report, ReportFormat format) {
    return format == ReportFormat::structured ? render_structured(report) : render_table(report);
}

}  // namespace dwv
