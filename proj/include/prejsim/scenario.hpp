#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "prejsim/model.hpp"

namespace prejsim {

using Json = nlohmann::ordered_json;

struct GroupScenario {
    std::string name;
    std::size_t size = 0;
    double prejudiced_fraction = 0.0;
    std::vector<std::string> targets;   // group names the prejudiced members target
    double renegade_fraction = 0.0;     // share of this group's prejudiced agents turned renegade

    friend bool operator==(const GroupScenario&, const GroupScenario&) = default;
};

/// Optional hand-written faction layout. Agent ids are global and assigned
/// contiguously group by group in declaration order.
struct ExplicitFaction {
    std::string group;
    std::vector<AgentId> members;
    friend bool operator==(const ExplicitFaction&, const ExplicitFaction&) = default;
};

struct ScenarioSpec {
    std::string label;
    std::vector<GroupScenario> groups;
    ModelParams params;
    std::uint64_t iterations = 100000;
    std::size_t repetitions = 10;
    std::uint64_t stride = 100;
    std::vector<ExplicitFaction> factions;

    std::size_t population() const;
    /// Throws ConfigError on fractions outside [0, 1], unknown or self targets,
    /// missing groups, or non-positive run lengths.
    void validate() const;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// A named family of sweep points, each a complete scenario.
struct ScenarioFamily {
    std::string name;
    std::string description;
    std::vector<ScenarioSpec> points;

    const ScenarioSpec& point(std::string_view label) const;
    friend bool operator==(const ScenarioFamily&, const ScenarioFamily&) = default;
};

/// Number of prejudiced agents for a fraction of a group: nearest integer,
/// ties rounded up.
std::size_t prejudiced_count(double fraction, std::size_t group_size);

/// Expands a scenario into a validated society layout. Factions are filled
/// whole with prejudiced agents first; at most one faction per group is
/// mixed. Renegades are drawn uniformly from the group's prejudiced agents.
SocietyConfig build_scenario(const ScenarioSpec& spec, Rng& rng);

const std::vector<std::string>& preset_names();
/// Throws UsageError for unknown names.
ScenarioFamily preset(std::string_view name);

Json to_json(const ModelParams& params);
ModelParams params_from_json(const Json& j);
Json to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const Json& j);
Json to_json(const ScenarioFamily& family);
/// Accepts either a family object (with "points") or a single scenario.
ScenarioFamily family_from_json(const Json& j);

/// Reads and parses a scenario file. Throws IoError if unreadable and
/// ConfigError if malformed.
ScenarioFamily load_family(const std::filesystem::path& path);

}  // namespace prejsim
