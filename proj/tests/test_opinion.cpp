#include <doctest.h>

#include <numeric>
#include <random>

#include "prejsim/errors.hpp"
#include "prejsim/interaction.hpp"
#include "prejsim/opinion.hpp"
#include "support.hpp"

using namespace prejsim;
using prejsim::testing::fresh;
using prejsim::testing::small_spec;

namespace {

// Two groups of 4, factions of 2. Both groups are prejudiced against each
// other and half of G2's prejudiced agents are renegades.
ScenarioSpec mixed_spec() {
    auto spec = small_spec({4, 4}, 2);
    spec.groups[0].prejudiced_fraction = 1.0;
    spec.groups[0].targets = {"G2"};
    spec.groups[1].prejudiced_fraction = 1.0;
    spec.groups[1].targets = {"G1"};
    spec.groups[1].renegade_fraction = 0.5;
    return spec;
}

AgentId first_of_kind(const SocietyState& s, GroupId g, AgentKind k) {
    for (const auto& a : s.agents) {
        if (a.group == g && a.kind == k) return a.id;
    }
    FAIL("no such agent");
    return 0;
}

}  // namespace

TEST_CASE("individual opinion") {
    ExperienceStore store(3, 10);
    for (int i = 0; i < 10; ++i) store.record(0, 1, 0.5);
    CHECK(opinion(store, 0, 1, 0.5) == doctest::Approx(0.5));
    CHECK(opinion(store, 0, 2, 0.5) == 0.5);       // empty history -> default
    CHECK(opinion(store, 0, 2, 0.35) == 0.35);

    ExperienceStore partial(3, 10);
    const std::vector<double> h{0.2, 0.4, 0.6, 0.8};
    for (double v : h) partial.record(1, 2, v);
    const double oracle = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
    CHECK(opinion(partial, 1, 2, 0.5) == doctest::Approx(oracle));
    CHECK(oracle == doctest::Approx(0.5));
}

TEST_CASE("effective prejudice lookup") {
    auto s = fresh(mixed_spec());
    auto plain = fresh(small_spec({2, 2}, 2));
    CHECK(effective_prejudice(plain.agents[0], 0) == 0.0);
    CHECK(effective_prejudice(plain.agents[0], 1) == 0.0);

    const AgentId g1 = first_of_kind(s, 0, AgentKind::Prejudiced);
    s.agents[g1].prejudice.set(1, 0.37);
    CHECK(effective_prejudice(s.agents[g1], 1) == 0.37);
    CHECK(effective_prejudice(s.agents[g1], 0) == 0.0);

    const AgentId ren = first_of_kind(s, 1, AgentKind::Renegade);
    const double own = *s.agents[ren].prejudice.find(1);
    CHECK(effective_prejudice(s.agents[ren], 1) == own);
    CHECK(effective_prejudice(s.agents[ren], 0) == 0.0);
}

TEST_CASE("prejudiced opinion") {
    auto s = fresh(mixed_spec());
    const AgentId a = first_of_kind(s, 0, AgentKind::Prejudiced);
    const AgentId partner = 4;   // first agent of G2
    s.experience.record(a, partner, 0.7);

    s.agents[a].prejudice.set(1, 0.0);
    CHECK(prejudiced_opinion(s, a, partner) == doctest::Approx(0.7));
    s.agents[a].prejudice.set(1, 1.0);
    CHECK(prejudiced_opinion(s, a, partner) == 0.0);

    auto s2 = fresh(mixed_spec());
    s2.experience.record(a, partner, 0.8);
    s2.agents[a].prejudice.set(1, 0.3);
    CHECK(prejudiced_opinion(s2, a, partner) == doctest::Approx((1.0 - 0.3) * 0.8));
    CHECK(prejudiced_opinion(s2, a, partner) == doctest::Approx(0.56));
}

TEST_CASE("faction opinion") {
    SUBCASE("single member") {
        auto s = fresh(small_spec({2}, 1));
        s.experience.record(0, 1, 0.3);
        const std::vector<AgentId> one{0};
        CHECK(faction_opinion(s, one, 1) == doctest::Approx(0.3));
    }
    SUBCASE("two members average") {
        auto s = fresh(small_spec({2, 2}, 2));
        s.experience.record(0, 2, 0.4);
        s.experience.record(1, 2, 0.6);
        CHECK(faction_opinion(s, s.faction_members(0), 2) == doctest::Approx(0.5));
    }
    SUBCASE("empty histories fall back to the default") {
        auto s = fresh(small_spec({4, 4}, 4));
        CHECK(faction_opinion(s, s.faction_members(0), 5) == 0.5);
    }
    SUBCASE("empty faction") {
        auto s = fresh(small_spec({2}, 1));
        CHECK_THROWS_AS(faction_opinion(s, {}, 1), ConfigError);
        CHECK_THROWS_AS(faction_prejudiced_opinion(s, {}, 1), ConfigError);
    }
}

TEST_CASE("faction prejudiced opinion") {
    auto spec = small_spec({2, 2}, 2);
    spec.groups[0].prejudiced_fraction = 1.0;
    spec.groups[0].targets = {"G2"};
    auto s = fresh(spec);
    const auto members = s.faction_members(0);
    const AgentId partner = 2;
    s.experience.record(0, partner, 0.5);
    s.experience.record(1, partner, 0.5);

    s.agents[0].prejudice.set(1, 0.0);
    s.agents[1].prejudice.set(1, 0.0);
    CHECK(faction_prejudiced_opinion(s, members, partner) ==
          doctest::Approx(faction_opinion(s, members, partner)));

    s.agents[0].prejudice.set(1, 1.0);
    s.agents[1].prejudice.set(1, 1.0);
    CHECK(faction_prejudiced_opinion(s, members, partner) == 0.0);

    s.agents[0].prejudice.set(1, 0.2);
    s.agents[1].prejudice.set(1, 0.6);
    const double oracle = ((1 - 0.2) * 0.5 + (1 - 0.6) * 0.5) / 2.0;
    CHECK(oracle == doctest::Approx(0.3));
    CHECK(faction_prejudiced_opinion(s, members, partner) == doctest::Approx(oracle));
}

TEST_CASE("prejudiced opinion is non-increasing in prejudice") {
    auto s = fresh(mixed_spec());
    const AgentId a = first_of_kind(s, 0, AgentKind::Prejudiced);
    s.experience.record(a, 5, 0.9);
    double last = 2.0;
    for (int i = 0; i <= 100; ++i) {
        s.agents[a].prejudice.set(1, i / 100.0);
        const double v = prejudiced_opinion(s, a, 5);
        CHECK(v <= last);
        last = v;
    }
}

TEST_CASE("identical member histories aggregate to the single-member value") {
    auto s = fresh(small_spec({4, 4}, 4));
    for (AgentId m : s.faction_members(0)) {
        for (double v : {0.1, 0.9, 0.35}) s.experience.record(m, 6, v);
    }
    const double single = opinion(s.experience, 0, 6, 0.5);
    CHECK(faction_opinion(s, s.faction_members(0), 6) == doctest::Approx(single));
}

TEST_CASE("faction aggregates equal brute-force summation on random small societies") {
    Rng gen(404);
    for (int trial = 0; trial < 40; ++trial) {
        auto spec = prejsim::testing::random_spec(gen, 20);
        auto s = fresh(spec, trial);
        Rng rng(trial);
        for (int i = 0; i < 300; ++i) step(s, rng);

        const double fallback = s.params().default_opinion;
        for (const auto& f : s.config.factions) {
            for (AgentId partner = 0; partner < s.agents.size(); ++partner) {
                // Recompute from raw recalled histories and raw prejudice maps.
                double plain = 0.0, prejudiced = 0.0;
                for (AgentId m : f.members) {
                    const auto hist = s.experience.recall(m, partner);
                    double eta = fallback;
                    if (!hist.empty()) {
                        eta = 0.0;
                        for (double v : hist) eta += v;
                        eta /= static_cast<double>(hist.size());
                    }
                    double p = 0.0;
                    for (const auto& [g, level] : s.agents[m].prejudice) {
                        if (g == s.agents[partner].group) p = level;
                    }
                    plain += eta;
                    prejudiced += (1.0 - p) * eta;
                }
                const double n = static_cast<double>(f.members.size());
                const double o = faction_opinion(s, f.members, partner);
                const double pf = faction_prejudiced_opinion(s, f.members, partner);
                REQUIRE(o == doctest::Approx(plain / n).epsilon(1e-12));
                REQUIRE(pf == doctest::Approx(prejudiced / n).epsilon(1e-12));
                REQUIRE(o >= 0.0);
                REQUIRE(o <= 1.0);
                REQUIRE(pf >= 0.0);
                REQUIRE(pf <= 1.0);
            }
        }
    }
}
