// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/replay.hpp"

namespace dwv {

namespace {

void compare_generation(const std::string& label, const GenerationResult& recorded, const GenerationResult& fresh,
                        ReplayReport& report) {
    if (recorded.images.size() != fresh.images.size()) {
        report.mismatches.push_back(label + ": image count " + std::to_string(recorded.images.size()) + " vs " +
                                    std::to_string(fresh.images.size()));
        return;
    }
    for (std::size_t i = 0; i < recorded.images.size(); ++i) {
        ++report.images_checked;
        if (recorded.images[i].id != fresh.images[i].id) {
            report.mismatches.push_back(label + ": image " + std::to_string(i) + " id differs");
        }
    }
    if (!(recorded.predictions == fresh.predictions)) report.mismatches.push_back(label + ": predictions differ");
    if (!(recorded.aggregated == fresh.aggregated)) report.mismatches.push_back(label + ": aggregated distribution differs");
    if (!(recorded.recompute_aggregate() == recorded.aggregated)) {
        report.mismatches.push_back(label + ": stored aggregate is not recomputable from stored predictions");
    }
}

}  // namespace

ReplayReport replay_session(const Session& recorded, const Pipeline& pipeline) {
    ReplayReport report;
    std::optional<DistributionSet> baseline;
    if (recorded.baseline) {
        const auto& b = *recorded.baseline;
        const GenerationResult fresh = pipeline.run_baseline(recorded.prompt, b.count, b.seed);
        compare_generation("baseline", b, fresh, report);
        baseline = fresh.aggregated;
        ++report.results_checked;
    }
    for (std::size_t i = 0; i < recorded.edits.size(); ++i) {
        const auto& e = recorded.edits[i];
        const std::string label = "edit " + std::to_string(i) + " (" + format_worldview(e.worldview) + ")";
        // Edits resolve against the baseline recorded at their submission.
        const EditResult fresh = pipeline.run_edit(recorded.prompt, e.worldview, e.baseline, e.generation.count,
                                                   e.generation.seed, e.sampler);
        if (!(fresh.target == e.target)) report.mismatches.push_back(label + ": target differs");
        if (!(fresh.triples == e.triples)) report.mismatches.push_back(label + ": triples differ");
        compare_generation(label, e.generation, fresh.generation, report);
        ++report.results_checked;
    }
    return report;
}

Json to_json(const ReplayReport& report) {
    return Json{{"identical", report.identical()},
                {"results_checked", report.results_checked},
                {"images_checked", report.images_checked},
                {"mismatches", report.mismatches}};
}

}  // namespace dwv
