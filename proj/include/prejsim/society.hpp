#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prejsim/experience_store.hpp"
#include "prejsim/model.hpp"

namespace prejsim {

/// Mutable state of one run. Owned by exactly one run at a time.
struct SocietyState {
    SocietyConfig config;
    std::vector<AgentState> agents;
    ExperienceStore experience;
    std::uint64_t iteration = 0;

    const ModelParams& params() const noexcept { return config.params; }
    std::span<const AgentId> faction_members(AgentId agent) const {
        return config.factions[agents[agent].faction].members;
    }

    friend bool operator==(const SocietyState&, const SocietyState&) = default;
};

/// Validates `config` and builds a fresh state: prejudice levels drawn from
/// Normal(mean, stddev) clamped to [0, 1] (targets in ascending agent order,
/// each agent's targets in listed order), alignment at its initial value,
/// zero prosperity, empty memory.
SocietyState new_society(SocietyConfig config, Rng& rng);

/// Sample from Normal(mean, stddev) clamped to [0, 1].
double draw_prejudice(const ModelParams& params, Rng& rng);

}  // namespace prejsim
