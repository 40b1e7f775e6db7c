// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#include "dwv/worldview.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace dwv {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_spec(std::string_view text, const std::string& why) {
    throw Error(ErrorCode::InvalidWorldview, "invalid worldview '" + std::string(text) + "': " + why);
}

double parse_double(std::string_view text, std::string_view whole) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) bad_spec(whole, "bad number '" + std::string(text) + "'");
    return value;
}

}  // namespace

std::string_view mode_name(WorldviewMode mode) noexcept {
    switch (mode) {
        case WorldviewMode::parity: return "parity";
        case WorldviewMode::census: return "census";
        case WorldviewMode::absolute: return "absolute";
        case WorldviewMode::relative: return "relative";
    }
    return "";
}

WorldviewSpec WorldviewSpec::parity() { return WorldviewSpec{}; }

WorldviewSpec WorldviewSpec::census(std::string ref) {
    WorldviewSpec spec;
    spec.mode = WorldviewMode::census;
    spec.census_ref = std::move(ref);
    return spec;
}

WorldviewSpec WorldviewSpec::absolute(std::map<Axis, std::set<std::string>> selections) {
    WorldviewSpec spec;
    spec.mode = WorldviewMode::absolute;
    spec.selections = std::move(selections);
    return spec;
}

WorldviewSpec WorldviewSpec::relative(double t) {
    WorldviewSpec spec;
    spec.mode = WorldviewMode::relative;
    spec.t = t;
    return spec;
}

void WorldviewSpec::validate() const {
    switch (mode) {
        case WorldviewMode::absolute:
            for (Axis axis : kAxes) {
                auto it = selections.find(axis);
                if (it == selections.end() || it->second.empty()) {
                    throw Error(ErrorCode::EmptySelection,
                                "absolute worldview has no " + std::string(axis_name(axis)) + " selection");
                }
                for (const auto& id : it->second) category_index(axis, id);
            }
            break;
        case WorldviewMode::relative:
            if (!(t >= 0.0 && t <= 1.0)) {
                throw Error(ErrorCode::OutOfRange, "relative worldview t must lie in [0, 1]");
            }
            break;
        case WorldviewMode::parity:
        case WorldviewMode::census:
            break;
    }
}

WorldviewSpec parse_worldview(std::string_view text) {
    const std::string_view whole = text;
    text = trim(text);
    const std::size_t colon = text.find(':');
    const std::string_view head = colon == std::string_view::npos ? text : text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (head == "parity") {
        if (colon != std::string_view::npos) bad_spec(whole, "parity takes no arguments");
        return WorldviewSpec::parity();
    }
    if (head == "census") {
        if (colon != std::string_view::npos && trim(rest).empty()) bad_spec(whole, "empty census table name");
        return WorldviewSpec::census(std::string(trim(rest)));
    }
    if (head == "relative") {
        const auto kv = split(rest, '=');
        if (kv.size() != 2 || trim(kv[0]) != "t") bad_spec(whole, "expected relative:t=<number>");
        WorldviewSpec spec = WorldviewSpec::relative(parse_double(trim(kv[1]), whole));
        spec.validate();
        return spec;
    }
    if (head == "absolute") {
        std::map<Axis, std::set<std::string>> selections;
        for (std::string_view clause : split(rest, ';')) {
            clause = trim(clause);
            if (clause.empty()) continue;
            const auto kv = split(clause, '=');
            if (kv.size() != 2) bad_spec(whole, "expected <axis>=<category>[,<category>...]");
            Axis axis;
            try {
                axis = parse_axis(trim(kv[0]));
            } catch (const Error& e) {
                bad_spec(whole, e.what());
            }
            if (selections.count(axis)) bad_spec(whole, "axis listed twice");
            auto& chosen = selections[axis];
            for (std::string_view id : split(kv[1], ',')) {
                id = trim(id);
                if (!id.empty()) chosen.emplace(id);
            }
        }
        WorldviewSpec spec = WorldviewSpec::absolute(std::move(selections));
        spec.validate();
        return spec;
    }
    bad_spec(whole, "unknown mode '" + std::string(head) + "'");
}

std::string format_worldview(const WorldviewSpec& spec) {
    std::ostringstream out;
    out << mode_name(spec.mode);
    switch (spec.mode) {
        case WorldviewMode::parity:
            break;
        case WorldviewMode::census:
            if (!spec.census_ref.empty()) out << ':' << spec.census_ref;
            break;
        case WorldviewMode::relative: {
            char buf[32];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, spec.t);
            out << ":t=" << std::string_view(buf, static_cast<std::size_t>(end - buf));
            break;
        }
        case WorldviewMode::absolute: {
            out << ':';
            bool first_axis = true;
            for (Axis axis : kAxes) {
                auto it = spec.selections.find(axis);
                if (it == spec.selections.end()) continue;
                if (!first_axis) out << ';';
                first_axis = false;
                out << axis_name(axis) << '=';
                // Canonical category order rather than lexical set order.
                bool first = true;
                for (std::string_view id : axis_categories(axis)) {
                    if (!it->second.count(std::string(id))) continue;
                    if (!first) out << ',';
                    first = false;
                    out << id;
                }
            }
            break;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Census

CensusTable us2020_census_table() {
    // Gender: 2020 Census DHC, female 50.8%.
    // Race: 2020 Census redistricting data (non-Hispanic single-race shares and
    // Hispanic of any race). Asian alone is split by the ACS 2019 detailed Asian
    // groups (East 42%, Southeast 37%, Indian 21%); Middle Eastern is carved out
    // of White using the ACS MENA ancestry estimate. Multiracial, AIAN, NHPI and
    // other have no category here and drop out by renormalization.
    // Age: 2020 Census DHC single-year ages aggregated into the nine bins.
    auto gender = make_distribution(Axis::gender, {{"female", 0.508}, {"male", 0.492}});
    auto race = make_distribution(Axis::race, {{"white", 0.567},
                                               {"black", 0.121},
                                               {"indian", 0.012},
                                               {"east_asian", 0.025},
                                               {"southeast_asian", 0.022},
                                               {"middle_eastern", 0.011},
                                               {"latino_hispanic", 0.187}});
    auto age = make_distribution(Axis::age, {{"age_0_2", 0.034},
                                             {"age_3_9", 0.084},
                                             {"age_10_19", 0.131},
                                             {"age_20_29", 0.133},
                                             {"age_30_39", 0.134},
                                             {"age_40_49", 0.124},
                                             {"age_50_59", 0.130},
                                             {"age_60_69", 0.121},
                                             {"age_70_plus", 0.109}});
    return CensusTable{
        "us2020",
        DistributionSet(std::move(gender), std::move(race), std::move(age)),
        "U.S. Census Bureau, 2020 Census (DHC, P.L. 94-171) with ACS 2019 Asian and MENA detail",
        2020,
    };
}

CensusCatalog CensusCatalog::builtin() {
    CensusCatalog catalog;
    catalog.add(us2020_census_table());
    catalog.set_default("us2020");
    return catalog;
}

void CensusCatalog::add(CensusTable table) {
    if (table.id.empty()) throw Error(ErrorCode::ConfigError, "census table without an id");
    std::string id = table.id;
    tables_.insert_or_assign(std::move(id), std::move(table));
}

void CensusCatalog::set_default(std::string id) {
    if (!tables_.count(id)) throw Error(ErrorCode::UnknownCensusTable, "no census table '" + id + "'");
    default_id_ = std::move(id);
}

const CensusTable& CensusCatalog::find(std::string_view ref) const {
    const std::string_view key = ref.empty() ? std::string_view(default_id_) : ref;
    auto it = tables_.find(key);
    if (it == tables_.end()) {
        throw Error(ErrorCode::UnknownCensusTable, "no census table '" + std::string(key) + "'");
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Targets

DistributionSet parity_target() { return uniform_set(); }

DistributionSet census_target(const CensusTable& table) { return table.distributions; }

DistributionSet absolute_target(const std::map<Axis, std::set<std::string>>& selections) {
    auto axis_target = [&](Axis axis) {
        auto it = selections.find(axis);
        if (it == selections.end() || it->second.empty()) {
            throw Error(ErrorCode::EmptySelection, "no " + std::string(axis_name(axis)) + " categories selected");
        }
        std::vector<double> w(axis_size(axis), 0.0);
        const double share = 1.0 / static_cast<double>(it->second.size());
        for (const auto& id : it->second) w[category_index(axis, id)] = share;
        return CategoryDistribution(axis, std::move(w));
    };
    return DistributionSet(axis_target(Axis::gender), axis_target(Axis::race), axis_target(Axis::age));
}

DistributionSet relative_target(const DistributionSet& baseline, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::OutOfRange, "t must lie in [0, 1]");
    auto blend = [t](const CategoryDistribution& base) {
        const double u = 1.0 / static_cast<double>(base.size());
        std::vector<double> w(base.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - t) * base[i] + t * u;
        return CategoryDistribution(base.axis(), std::move(w));
    };
    return DistributionSet(blend(baseline.gender), blend(baseline.race), blend(baseline.age));
}

DistributionSet target_for(const WorldviewSpec& spec, const std::optional<DistributionSet>& baseline,
                           const CensusCatalog& census) {
    switch (spec.mode) {
        case WorldviewMode::parity:
            return parity_target();
        case WorldviewMode::census:
            return census_target(census.find(spec.census_ref));
        case WorldviewMode::absolute:
            spec.validate();
            return absolute_target(spec.selections);
        case WorldviewMode::relative:
            if (!baseline) {
                throw Error(ErrorCode::MissingBaseline, "relative worldview requires a baseline distribution");
            }
            return relative_target(*baseline, spec.t);
    }
    throw Error(ErrorCode::InvalidWorldview, "unknown worldview mode");
}

}  // namespace dwv
