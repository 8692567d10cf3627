#pragma once

#include <span>

#include "prejsim/experience_store.hpp"
#include "prejsim/model.hpp"
#include "prejsim/society.hpp"

namespace prejsim {

/// Individual opinion: mean of the remembered cooperation for the pair over
/// however many entries exist, or `default_opinion` when there are none.
double opinion(const ExperienceStore& store, AgentId observer, AgentId partner,
               double default_opinion);

/// Prejudice `agent` holds against `group`; 0 for groups it does not target.
double effective_prejudice(const AgentState& agent, GroupId group) noexcept;

/// Opinion discounted by the observer's prejudice against the partner's group.
double prejudiced_opinion(const SocietyState& state, AgentId observer, AgentId partner);

/// Mean individual opinion of `partner` over `members`. Throws ConfigError if
/// `members` is empty.
double faction_opinion(const SocietyState& state, std::span<const AgentId> members,
                       AgentId partner);

/// Mean prejudiced opinion of `partner` over `members`, each member applying
/// its own prejudice. Throws ConfigError if `members` is empty.
double faction_prejudiced_opinion(const SocietyState& state, std::span<const AgentId> members,
                                  AgentId partner);

}  // namespace prejsim
