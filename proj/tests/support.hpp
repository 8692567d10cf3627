#pragma once

#include <string>
#include <vector>

#include "prejsim/scenario.hpp"
#include "prejsim/society.hpp"

namespace prejsim::testing {

/// Scenario over groups named G1.. with the given sizes and faction size.
inline ScenarioSpec small_spec(const std::vector<std::size_t>& sizes, std::size_t faction_size) {
    ScenarioSpec spec;
    spec.label = "test";
    spec.params.faction_size = faction_size;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        spec.groups.push_back({"G" + std::to_string(i + 1), sizes[i], 0.0, {}, 0.0});
    }
    return spec;
}

inline SocietyConfig build(const ScenarioSpec& spec, std::uint64_t seed = 1) {
    Rng rng(seed);
    return build_scenario(spec, rng);
}

inline SocietyState fresh(const ScenarioSpec& spec, std::uint64_t seed = 1) {
    Rng rng(seed);
    return new_society(build(spec, seed), rng);
}

/// Random small society: 1-4 groups, faction size 2-5, 1-4 factions per
/// group, random prejudice fractions, targets and renegades.
inline ScenarioSpec random_spec(Rng& rng, std::size_t max_agents = 80) {
    std::uniform_int_distribution<std::size_t> groups_d(1, 4), nf_d(2, 5), fac_d(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const std::size_t g = groups_d(rng);
        const std::size_t nf = nf_d(rng);
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < g; ++i) sizes.push_back(nf * fac_d(rng));
        auto spec = small_spec(sizes, nf);
        if (spec.population() > max_agents || spec.population() < 2) continue;
        for (std::size_t i = 0; i < g; ++i) {
            auto& gs = spec.groups[i];
            if (g > 1 && unit(rng) < 0.7) {
                gs.prejudiced_fraction = unit(rng) < 0.3 ? 1.0 : unit(rng);
                for (std::size_t t = 0; t < g; ++t) {
                    if (t != i && unit(rng) < 0.6) gs.targets.push_back(spec.groups[t].name);
                }
                if (gs.targets.empty()) gs.targets.push_back(spec.groups[(i + 1) % g].name);
                if (prejudiced_count(gs.prejudiced_fraction, gs.size) > 0 && unit(rng) < 0.4) {
                    gs.renegade_fraction = unit(rng);
                }
            }
        }
        spec.params.memory_size = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        if (unit(rng) < 0.3) spec.params.memory_semantics = MemorySemantics::OwnCooperation;
        return spec;
    }
}

}  // namespace prejsim::testing
