// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "dwv/demographics.hpp"

namespace dwv {

enum class WorldviewMode { parity, census, absolute, relative };

std::string_view mode_name(WorldviewMode mode) noexcept;

/// A user's chosen editing mode and its parameters.
///
/// `selections` is read only in absolute mode, `t` only in relative mode and
/// `census_ref` only in census mode (empty selects the catalog default).
struct WorldviewSpec {
    WorldviewMode mode = WorldviewMode::parity;
    std::map<Axis, std::set<std::string>> selections;
    double t = 0.0;
    std::string census_ref;

    static WorldviewSpec parity();
    static WorldviewSpec census(std::string ref = {});
    static WorldviewSpec absolute(std::map<Axis, std::set<std::string>> selections);
    static WorldviewSpec relative(double t);

    /// Throws EmptySelection, OutOfRange or UnknownCategory.
    void validate() const;

    bool operator==(const WorldviewSpec&) const = default;
};

/// Parses the command-line mini-syntax:
///   parity
///   census | census:<table>
///   absolute:gender=female;race=black;age=age_30_39,age_40_49
///   relative:t=0.5
/// Throws InvalidWorldview on malformed text.
WorldviewSpec parse_worldview(std::string_view text);

/// Canonical mini-syntax; parse_worldview(format_worldview(s)) == s.
std::string format_worldview(const WorldviewSpec& spec);

struct CensusTable {
    std::string id;
    DistributionSet distributions;
    std::string source;
    int vintage = 0;
};

class CensusCatalog {
public:
    /// Catalog holding only the pinned US table.
    static CensusCatalog builtin();

    void add(CensusTable table);
    void set_default(std::string id);

    /// Resolves a reference; an empty ref resolves to the default table.
    const CensusTable& find(std::string_view ref) const;
    const std::map<std::string, CensusTable, std::less<>>& tables() const noexcept { return tables_; }
    const std::string& default_id() const noexcept { return default_id_; }

private:
    std::map<std::string, CensusTable, std::less<>> tables_;
    std::string default_id_;
};

/// US population shares mapped onto the classifier categories.
CensusTable us2020_census_table();

DistributionSet parity_target();
DistributionSet census_target(const CensusTable& table);
DistributionSet absolute_target(const std::map<Axis, std::set<std::string>>& selections);
DistributionSet relative_target(const DistributionSet& baseline, double t);

/// Dispatches on spec.mode. Throws MissingBaseline for relative without a
/// baseline and UnknownCensusTable for an unresolvable census ref.
DistributionSet target_for(const WorldviewSpec& spec, const std::optional<DistributionSet>& baseline,
                           const CensusCatalog& census);

}  // namespace dwv
