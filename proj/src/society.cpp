#include "prejsim/society.hpp"

#include <algorithm>

namespace prejsim {

double draw_prejudice(const ModelParams& params, Rng& rng) {
    std::normal_distribution<double> normal(params.prejudice_mean, params.prejudice_stddev);
    return std::clamp(normal(rng), 0.0, 1.0);
}

SocietyState new_society(SocietyConfig config, Rng& rng) {
    validate(config);

    const std::size_t n = config.agent_count();
    std::vector<FactionId> faction_of(n, 0);
    for (const auto& f : config.factions) {
        for (AgentId m : f.members) faction_of[m] = f.id;
    }

    std::vector<AgentState> agents(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto& spec = config.agents[a];
        auto& agent = agents[a];
        agent.id = static_cast<AgentId>(a);
        agent.group = spec.group;
        agent.faction = faction_of[a];
        agent.kind = spec.kind;
        agent.faction_alignment = config.params.initial_alignment;
        for (GroupId target : spec.targets) {
            agent.prejudice.set(target, draw_prejudice(config.params, rng));
        }
    }

    ExperienceStore store(n, config.params.memory_size);
    return SocietyState{std::move(config), std::move(agents), std::move(store), 0};
}

}  // namespace prejsim
