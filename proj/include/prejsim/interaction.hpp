#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "prejsim/model.hpp"
#include "prejsim/society.hpp"

namespace prejsim {

/// Everything one CPD interaction read and changed. Index 0 is the first
/// sampled agent, index 1 its partner.
struct InteractionRecord {
    std::uint64_t iteration = 0;
    std::array<AgentId, 2> agents{};
    std::array<double, 2> cooperation{};
    std::array<double, 2> payoffs{};
    std::array<bool, 2> applied_prejudice{};   // partner's group was a target
    std::array<double, 2> prejudice_delta{};
    std::array<double, 2> alignment_delta{};
};

struct BetaThresholds {
    double reinforce;   // |faction - own| below this raises alignment
    double loosen;      // |faction - own| above this lowers alignment
};

/// Cooperation `agent` extends to `partner`: its own (possibly prejudiced)
/// opinion blended with its faction's aggregate by its faction alignment. The
/// prejudiced forms are used exactly when `agent` targets the partner's group.
double cooperation_level(const SocietyState& state, AgentId agent, AgentId partner);

/// Steps the agent's prejudice against `target` by the payoff thresholds and
/// clamps to [0, 1]. Returns the new level. No-op returning 0 when `target`
/// is not in the agent's target set.
double update_prejudice(AgentState& agent, GroupId target, double payoff,
                        const UpdateParams& params);

/// Alignment thresholds scaled linearly by (1 - f) into their bands.
BetaThresholds beta_thresholds(double alignment, const UpdateParams& params);

/// Mean prejudice of `members` against `target` (0 for members not targeting
/// it). Throws ConfigError if `members` is empty.
double faction_prejudice(const SocietyState& state, std::span<const AgentId> members,
                         GroupId target);

/// Raises, lowers, or keeps the agent's faction alignment depending on how far
/// its own prejudice sits from its faction's. Returns the new alignment.
double update_faction_alignment(AgentState& agent, double faction_prejudice, double own_prejudice,
                                const UpdateParams& params);

/// One full interaction between two distinct uniformly drawn agents.
/// Throws ConfigError if the society has fewer than two agents.
InteractionRecord step(SocietyState& state, Rng& rng);

/// Same as `step` with the pair chosen by the caller.
InteractionRecord interact(SocietyState& state, AgentId first, AgentId second);

}  // namespace prejsim
