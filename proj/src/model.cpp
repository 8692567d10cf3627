#include "prejsim/model.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "prejsim/errors.hpp"

namespace prejsim {

std::string_view to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::Unprejudiced: return "unprejudiced";
        case AgentKind::Prejudiced: return "prejudiced";
        case AgentKind::Renegade: return "renegade";
    }
    return "unknown";
}

std::optional<AgentKind> parse_agent_kind(std::string_view text) {
    if (text == "unprejudiced") return AgentKind::Unprejudiced;
    if (text == "prejudiced") return AgentKind::Prejudiced;
    if (text == "renegade") return AgentKind::Renegade;
    return std::nullopt;
}

std::string_view to_string(MemorySemantics semantics) {
    switch (semantics) {
        case MemorySemantics::PartnerCooperation: return "partner";
        case MemorySemantics::OwnCooperation: return "own";
    }
    return "unknown";
}

std::optional<MemorySemantics> parse_memory_semantics(std::string_view text) {
    if (text == "partner") return MemorySemantics::PartnerCooperation;
    if (text == "own") return MemorySemantics::OwnCooperation;
    return std::nullopt;
}

const double* PrejudiceMap::find(GroupId group) const noexcept {
    for (const auto& [g, level] : entries_) {
        if (g == group) return &level;
    }
    return nullptr;
}

double* PrejudiceMap::find(GroupId group) noexcept {
    for (auto& [g, level] : entries_) {
        if (g == group) return &level;
    }
    return nullptr;
}

void PrejudiceMap::set(GroupId group, double level) {
    if (double* existing = find(group)) {
        *existing = level;
        return;
    }
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), group,
                                [](const Entry& e, GroupId g) { return e.first < g; });
    entries_.insert(pos, {group, level});
}

void UpdateParams::validate() const {
    if (!(raise_prejudice_above > lower_prejudice_below)) {
        throw ConfigError("prejudice raise threshold must exceed the lower threshold");
    }
    if (!(prejudice_step > 0.0) || !(alignment_step > 0.0)) {
        throw ConfigError("prejudice and alignment step sizes must be positive");
    }
    if (!(reinforce_band.lo <= reinforce_band.hi) || !(loosen_band.lo <= loosen_band.hi)) {
        throw ConfigError("alignment threshold bands must have lo <= hi");
    }
    if (!(reinforce_band.hi <= loosen_band.lo)) {
        throw ConfigError("alignment threshold bands must be disjoint and ordered");
    }
}

void ModelParams::validate() const {
    if (memory_size == 0) throw ConfigError("memory_size must be at least 1");
    if (faction_size == 0) throw ConfigError("faction_size must be at least 1");
    update.validate();
    if (!(prejudice_stddev >= 0.0)) throw ConfigError("prejudice_stddev must be non-negative");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(initial_alignment)) throw ConfigError("initial_alignment must lie in [0, 1]");
    if (!unit(default_opinion)) throw ConfigError("default_opinion must lie in [0, 1]");
}

namespace {

std::string group_label(const SocietyConfig& config, GroupId g) {
    if (g < config.groups.size() && !config.groups[g].name.empty()) return config.groups[g].name;
    return "G" + std::to_string(g + 1);
}

}  // namespace

void validate(const SocietyConfig& config) {
    config.params.validate();
    const std::size_t n = config.agent_count();
    if (n == 0) throw ConfigError("society has no agents");
    if (config.groups.empty()) throw ConfigError("society has no groups");

    std::vector<std::size_t> group_counts(config.groups.size(), 0);
    for (std::size_t g = 0; g < config.groups.size(); ++g) {
        if (config.groups[g].id != g) {
            throw ConfigError("group " + group_label(config, static_cast<GroupId>(g)) +
                              " has id out of sequence");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        const auto& spec = config.agents[a];
        if (spec.group >= config.groups.size()) {
            throw ConfigError("agent " + std::to_string(a) + " belongs to unknown group " +
                              std::to_string(spec.group));
        }
        ++group_counts[spec.group];
    }
    for (std::size_t g = 0; g < config.groups.size(); ++g) {
        if (group_counts[g] != config.groups[g].size) {
            throw ConfigError("group " + group_label(config, static_cast<GroupId>(g)) +
                              " declares " + std::to_string(config.groups[g].size) +
                              " agents but has " + std::to_string(group_counts[g]));
        }
    }

    std::vector<int> faction_hits(n, 0);
    for (std::size_t f = 0; f < config.factions.size(); ++f) {
        const auto& faction = config.factions[f];
        const std::string name = "faction " + std::to_string(faction.id);
        if (faction.id != f) throw ConfigError(name + " has id out of sequence");
        if (faction.group >= config.groups.size()) {
            throw ConfigError(name + " lies in unknown group " + std::to_string(faction.group));
        }
        if (faction.members.empty()) throw ConfigError(name + " is empty");
        if (faction.members.size() != config.params.faction_size) {
            throw ConfigError(name + " has " + std::to_string(faction.members.size()) +
                              " members, expected " + std::to_string(config.params.faction_size));
        }
        for (AgentId m : faction.members) {
            if (m >= n) {
                throw ConfigError(name + " lists unknown agent " + std::to_string(m));
            }
            if (config.agents[m].group != faction.group) {
                throw ConfigError(name + " spans groups " + group_label(config, faction.group) +
                                  " and " + group_label(config, config.agents[m].group) +
                                  " (agent " + std::to_string(m) + ")");
            }
            ++faction_hits[m];
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (faction_hits[a] == 0) {
            throw ConfigError("agent " + std::to_string(a) + " belongs to no faction");
        }
        if (faction_hits[a] > 1) {
            throw ConfigError("agent " + std::to_string(a) + " belongs to " +
                              std::to_string(faction_hits[a]) + " factions");
        }
    }

    for (std::size_t a = 0; a < n; ++a) {
        const auto& spec = config.agents[a];
        const std::string who = "agent " + std::to_string(a);
        switch (spec.kind) {
            case AgentKind::Unprejudiced:
                if (!spec.targets.empty()) throw ConfigError(who + " is unprejudiced but has targets");
                break;
            case AgentKind::Renegade:
                if (spec.targets.size() != 1 || spec.targets.front() != spec.group) {
                    throw ConfigError(who + " is a renegade and must target exactly its own group");
                }
                break;
            case AgentKind::Prejudiced: {
                if (spec.targets.empty()) throw ConfigError(who + " is prejudiced but has no targets");
                auto sorted = spec.targets;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    throw ConfigError(who + " lists a target group twice");
                }
                for (GroupId t : sorted) {
                    if (t >= config.groups.size()) {
                        throw ConfigError(who + " targets unknown group " + std::to_string(t));
                    }
                    if (t == spec.group) {
                        throw ConfigError(who + " is prejudiced against its own group");
                    }
                }
                break;
            }
        }
    }
}

namespace {

class Fnv1a {
public:
    void add(std::string_view s) {
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
        hash_ ^= 0xff;   // field separator
        hash_ *= 0x100000001b3ULL;
    }
    void add(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        add(std::string_view(buf));
    }
    void add(std::uint64_t v) { add(std::string_view(std::to_string(v))); }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t digest(const SocietyConfig& config) {
    Fnv1a h;
    const auto& p = config.params;
    h.add(std::uint64_t{p.memory_size});
    h.add(std::uint64_t{p.faction_size});
    h.add(p.payoff.cooperate());
    h.add(p.payoff.temptation());
    h.add(p.payoff.defect());
    h.add(p.payoff.sucker());
    h.add(p.update.raise_prejudice_above);
    h.add(p.update.lower_prejudice_below);
    h.add(p.update.prejudice_step);
    h.add(p.update.alignment_step);
    h.add(p.update.reinforce_band.lo);
    h.add(p.update.reinforce_band.hi);
    h.add(p.update.loosen_band.lo);
    h.add(p.update.loosen_band.hi);
    h.add(p.prejudice_mean);
    h.add(p.prejudice_stddev);
    h.add(p.initial_alignment);
    h.add(p.default_opinion);
    h.add(to_string(p.memory_semantics));
    for (const auto& g : config.groups) {
        h.add(std::uint64_t{g.id});
        h.add(g.name);
        h.add(std::uint64_t{g.size});
    }
    for (const auto& f : config.factions) {
        h.add(std::uint64_t{f.id});
        h.add(std::uint64_t{f.group});
        for (AgentId m : f.members) h.add(std::uint64_t{m});
    }
    for (const auto& a : config.agents) {
        h.add(std::uint64_t{a.group});
        h.add(to_string(a.kind));
        for (GroupId t : a.targets) h.add(std::uint64_t{t});
    }
    return h.value();
}

}  // namespace prejsim
