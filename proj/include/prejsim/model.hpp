#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prejsim/cpd.hpp"

namespace prejsim {

using AgentId = std::uint32_t;
using GroupId = std::uint32_t;
using FactionId = std::uint32_t;
using Rng = std::mt19937_64;

enum class AgentKind { Unprejudiced, Prejudiced, Renegade };

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view text);

/// What an observer stores after an interaction: how the partner treated it,
/// or how it treated the partner.
enum class MemorySemantics { PartnerCooperation, OwnCooperation };

std::string_view to_string(MemorySemantics semantics);
std::optional<MemorySemantics> parse_memory_semantics(std::string_view text);

struct Interval {
    double lo;
    double hi;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Thresholds and step sizes for the prejudice and faction-alignment updates.
struct UpdateParams {
    double raise_prejudice_above = 2.0;   // payoff above this reinforces prejudice
    double lower_prejudice_below = 1.5;   // payoff below this weakens it
    double prejudice_step = 0.005;
    double alignment_step = 0.005;
    Interval reinforce_band{0.01, 0.08};  // range of the "close to faction" threshold
    Interval loosen_band{0.08, 0.20};     // range of the "far from faction" threshold

    void validate() const;
    friend bool operator==(const UpdateParams&, const UpdateParams&) = default;
};

struct ModelParams {
    std::size_t memory_size = 10;
    std::size_t faction_size = 20;
    PayoffParams payoff{};
    UpdateParams update{};
    double prejudice_mean = 0.5;
    double prejudice_stddev = 0.2;
    double initial_alignment = 0.5;
    double default_opinion = 0.5;
    MemorySemantics memory_semantics = MemorySemantics::PartnerCooperation;

    void validate() const;
    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Per-target-group prejudice levels. Holds entries only for targeted groups,
/// kept sorted by group id.
class PrejudiceMap {
public:
    using Entry = std::pair<GroupId, double>;

    PrejudiceMap() = default;

    bool targets(GroupId group) const noexcept { return find(group) != nullptr; }
    const double* find(GroupId group) const noexcept;
    double* find(GroupId group) noexcept;
    void set(GroupId group, double level);

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    friend bool operator==(const PrejudiceMap&, const PrejudiceMap&) = default;

private:
    std::vector<Entry> entries_;
};

struct AgentState {
    AgentId id = 0;
    GroupId group = 0;
    FactionId faction = 0;
    AgentKind kind = AgentKind::Unprejudiced;
    PrejudiceMap prejudice;
    double faction_alignment = 0.5;
    double prosperity = 0.0;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct GroupInfo {
    GroupId id = 0;
    std::string name;
    std::size_t size = 0;
    friend bool operator==(const GroupInfo&, const GroupInfo&) = default;
};

struct Faction {
    FactionId id = 0;
    GroupId group = 0;
    std::vector<AgentId> members;
    friend bool operator==(const Faction&, const Faction&) = default;
};

struct AgentSpec {
    GroupId group = 0;
    AgentKind kind = AgentKind::Unprejudiced;
    std::vector<GroupId> targets;
    friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

/// Immutable description of a society: who exists, who belongs where, and
/// the model parameters. `agents[i]` describes agent id i.
struct SocietyConfig {
    std::vector<GroupInfo> groups;
    std::vector<Faction> factions;
    std::vector<AgentSpec> agents;
    ModelParams params;
    std::vector<std::string> notes;

    std::size_t agent_count() const noexcept { return agents.size(); }
    friend bool operator==(const SocietyConfig&, const SocietyConfig&) = default;
};

/// Throws ConfigError naming the first violated invariant: group/faction
/// partitions, faction containment and size, target sets per kind.
void validate(const SocietyConfig& config);

/// Stable 64-bit FNV-1a digest over a canonical text rendering of the config.
std::uint64_t digest(const SocietyConfig& config);

}  // namespace prejsim
