#include "prejsim/interaction.hpp"

#include <algorithm>
#include <cmath>

#include "prejsim/cpd.hpp"
#include "prejsim/errors.hpp"
#include "prejsim/opinion.hpp"

namespace prejsim {

double cooperation_level(const SocietyState& state, AgentId agent, AgentId partner) {
    if (agent == partner) throw DomainError("an agent cannot interact with itself");
    const AgentState& self = state.agents[agent];
    const GroupId partner_group = state.agents[partner].group;
    const auto members = state.faction_members(agent);
    const double f = self.faction_alignment;

    double c = 0.0;
    if (self.prejudice.targets(partner_group)) {
        c = f * faction_prejudiced_opinion(state, members, partner) +
            (1.0 - f) * prejudiced_opinion(state, agent, partner);
    } else {
        c = f * faction_opinion(state, members, partner) +
            (1.0 - f) * opinion(state.experience, agent, partner, state.params().default_opinion);
    }
    // Convex combinations of values in [0, 1]; clamp only absorbs rounding.
    return std::clamp(c, 0.0, 1.0);
}

double update_prejudice(AgentState& agent, GroupId target, double payoff,
                        const UpdateParams& params) {
    double* p = agent.prejudice.find(target);
    if (p == nullptr) return 0.0;
    if (payoff > params.raise_prejudice_above) {
        *p += params.prejudice_step;
    } else if (payoff < params.lower_prejudice_below) {
        *p -= params.prejudice_step;
    }
    *p = std::clamp(*p, 0.0, 1.0);
    return *p;
}

BetaThresholds beta_thresholds(double alignment, const UpdateParams& params) {
    const double slack = 1.0 - alignment;
    const auto& r = params.reinforce_band;
    const auto& l = params.loosen_band;
    return {r.lo + slack * (r.hi - r.lo), l.lo + slack * (l.hi - l.lo)};
}

double faction_prejudice(const SocietyState& state, std::span<const AgentId> members,
                         GroupId target) {
    if (members.empty()) throw ConfigError("faction prejudice over an empty faction");
    double sum = 0.0;
    for (AgentId m : members) sum += effective_prejudice(state.agents[m], target);
    return sum / static_cast<double>(members.size());
}

double update_faction_alignment(AgentState& agent, double faction_prejudice, double own_prejudice,
                                const UpdateParams& params) {
    const auto beta = beta_thresholds(agent.faction_alignment, params);
    const double gap = std::abs(faction_prejudice - own_prejudice);
    double f = agent.faction_alignment;
    if (gap < beta.reinforce) {
        f += params.alignment_step;
    } else if (gap > beta.loosen) {
        f -= params.alignment_step;
    }
    agent.faction_alignment = std::clamp(f, 0.0, 1.0);
    return agent.faction_alignment;
}

InteractionRecord interact(SocietyState& state, AgentId first, AgentId second) {
    if (first == second) throw DomainError("an agent cannot interact with itself");
    const auto& params = state.params();
    InteractionRecord rec;
    rec.iteration = state.iteration;
    rec.agents = {first, second};

    // Both decisions read the pre-step state.
    rec.cooperation[0] = cooperation_level(state, first, second);
    rec.cooperation[1] = cooperation_level(state, second, first);

    const auto [r0, r1] = payoff(rec.cooperation[0], rec.cooperation[1], params.payoff);
    rec.payoffs = {r0, r1};
    state.agents[first].prosperity += r0;
    state.agents[second].prosperity += r1;

    if (params.memory_semantics == MemorySemantics::PartnerCooperation) {
        state.experience.record(first, second, rec.cooperation[1]);
        state.experience.record(second, first, rec.cooperation[0]);
    } else {
        state.experience.record(first, second, rec.cooperation[0]);
        state.experience.record(second, first, rec.cooperation[1]);
    }

    std::array<GroupId, 2> partner_group{state.agents[second].group, state.agents[first].group};
    std::array<double, 2> before{};
    for (int i = 0; i < 2; ++i) {
        AgentState& self = state.agents[rec.agents[i]];
        rec.applied_prejudice[i] = self.prejudice.targets(partner_group[i]);
        if (!rec.applied_prejudice[i]) continue;
        before[i] = effective_prejudice(self, partner_group[i]);
        const double after = update_prejudice(self, partner_group[i], rec.payoffs[i], params.update);
        rec.prejudice_delta[i] = after - before[i];
    }

    // Alignment reads faction prejudice after both prejudice updates.
    for (int i = 0; i < 2; ++i) {
        if (!rec.applied_prejudice[i]) continue;
        const AgentId id = rec.agents[i];
        const double faction_p = faction_prejudice(state, state.faction_members(id), partner_group[i]);
        AgentState& self = state.agents[id];
        const double f_before = self.faction_alignment;
        const double own_p = effective_prejudice(self, partner_group[i]);
        rec.alignment_delta[i] = update_faction_alignment(self, faction_p, own_p, params.update) - f_before;
    }

    ++state.iteration;
    return rec;
}

InteractionRecord step(SocietyState& state, Rng& rng) {
    const std::size_t n = state.agents.size();
    if (n < 2) throw ConfigError("a society needs at least two agents to interact");
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const auto first = static_cast<AgentId>(pick(rng));
    auto second = static_cast<AgentId>(pick(rng));
    while (second == first) second = static_cast<AgentId>(pick(rng));
    return interact(state, first, second);
}

}  // namespace prejsim
