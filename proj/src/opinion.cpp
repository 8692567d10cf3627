#include "prejsim/opinion.hpp"

#include "prejsim/errors.hpp"

namespace prejsim {

double opinion(const ExperienceStore& store, AgentId observer, AgentId partner,
               double default_opinion) {
    return store.mean(observer, partner).value_or(default_opinion);
}

double effective_prejudice(const AgentState& agent, GroupId group) noexcept {
    const double* p = agent.prejudice.find(group);
    return p ? *p : 0.0;
}

double prejudiced_opinion(const SocietyState& state, AgentId observer, AgentId partner) {
    const double p = effective_prejudice(state.agents[observer], state.agents[partner].group);
    return (1.0 - p) * opinion(state.experience, observer, partner, state.params().default_opinion);
}

double faction_opinion(const SocietyState& state, std::span<const AgentId> members,
                       AgentId partner) {
    if (members.empty()) throw ConfigError("faction opinion over an empty faction");
    const double fallback = state.params().default_opinion;
    double sum = 0.0;
    for (AgentId m : members) sum += opinion(state.experience, m, partner, fallback);
    return sum / static_cast<double>(members.size());
}

double faction_prejudiced_opinion(const SocietyState& state, std::span<const AgentId> members,
                                  AgentId partner) {
    if (members.empty()) throw ConfigError("prejudiced faction opinion over an empty faction");
    double sum = 0.0;
    for (AgentId m : members) sum += prejudiced_opinion(state, m, partner);
    return sum / static_cast<double>(members.size());
}

}  // namespace prejsim
