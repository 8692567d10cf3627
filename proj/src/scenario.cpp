#include "prejsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "prejsim/errors.hpp"

namespace prejsim {

std::size_t ScenarioSpec::population() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size;
    return n;
}

void ScenarioSpec::validate() const {
    const std::string where = label.empty() ? std::string("scenario") : "scenario " + label;
    if (groups.empty()) throw ConfigError(where + ": no groups");
    if (stride == 0) throw ConfigError(where + ": stride must be at least 1");
    if (repetitions == 0) throw ConfigError(where + ": repetitions must be at least 1");
    params.validate();

    std::set<std::string> names;
    for (const auto& g : groups) {
        if (g.name.empty()) throw ConfigError(where + ": group with empty name");
        if (!names.insert(g.name).second) throw ConfigError(where + ": duplicate group " + g.name);
    }
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    for (const auto& g : groups) {
        const std::string gw = where + ", group " + g.name;
        if (g.size == 0) throw ConfigError(gw + ": size must be positive");
        if (!unit(g.prejudiced_fraction)) throw ConfigError(gw + ": prejudiced_fraction outside [0, 1]");
        if (!unit(g.renegade_fraction)) throw ConfigError(gw + ": renegade_fraction outside [0, 1]");
        for (const auto& t : g.targets) {
            if (!names.contains(t)) throw ConfigError(gw + ": unknown target group " + t);
            if (t == g.name) {
                throw ConfigError(gw + ": targets its own group; use renegade_fraction instead");
            }
        }
        if (g.prejudiced_fraction > 0.0 && g.targets.empty()) {
            throw ConfigError(gw + ": prejudiced agents need at least one target group");
        }
    }
    for (std::size_t i = 0; i < factions.size(); ++i) {
        if (!names.contains(factions[i].group)) {
            throw ConfigError(where + ": faction " + std::to_string(i) + " names unknown group " +
                              factions[i].group);
        }
    }
}

const ScenarioSpec& ScenarioFamily::point(std::string_view wanted) const {
    for (const auto& p : points) {
        if (p.label == wanted) return p;
    }
    throw UsageError("family " + name + " has no point " + std::string(wanted));
}

std::size_t prejudiced_count(double fraction, std::size_t group_size) {
    // Nudge before rounding so 0.6 * 500 == 299.99999... still lands on 300.
    const double exact = fraction * static_cast<double>(group_size);
    return static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9));
}

SocietyConfig build_scenario(const ScenarioSpec& spec, Rng& rng) {
    spec.validate();
    const std::size_t nf = spec.params.faction_size;

    SocietyConfig config;
    config.params = spec.params;

    std::map<std::string, GroupId> group_index;
    std::vector<AgentId> first_agent;
    AgentId next = 0;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const auto& gs = spec.groups[g];
        group_index[gs.name] = static_cast<GroupId>(g);
        config.groups.push_back({static_cast<GroupId>(g), gs.name, gs.size});
        first_agent.push_back(next);
        for (std::size_t i = 0; i < gs.size; ++i) {
            config.agents.push_back({static_cast<GroupId>(g), AgentKind::Unprejudiced, {}});
        }
        next += static_cast<AgentId>(gs.size);
    }

    if (spec.factions.empty()) {
        for (std::size_t g = 0; g < spec.groups.size(); ++g) {
            const auto& gs = spec.groups[g];
            if (gs.size % nf != 0) {
                throw ConfigError("group " + gs.name + " has " + std::to_string(gs.size) +
                                  " agents, not divisible by faction size " + std::to_string(nf));
            }
            for (std::size_t start = 0; start < gs.size; start += nf) {
                Faction f;
                f.id = static_cast<FactionId>(config.factions.size());
                f.group = static_cast<GroupId>(g);
                for (std::size_t i = 0; i < nf; ++i) {
                    f.members.push_back(first_agent[g] + static_cast<AgentId>(start + i));
                }
                config.factions.push_back(std::move(f));
            }
        }
    } else {
        for (const auto& ef : spec.factions) {
            Faction f;
            f.id = static_cast<FactionId>(config.factions.size());
            f.group = group_index.at(ef.group);
            f.members = ef.members;
            config.factions.push_back(std::move(f));
        }
    }

    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const auto& gs = spec.groups[g];
        const auto gid = static_cast<GroupId>(g);

        // Fill order: the group's factions in declaration order, then any
        // stragglers (only possible with a malformed explicit layout).
        std::vector<AgentId> order;
        std::vector<bool> placed(gs.size, false);
        for (const auto& f : config.factions) {
            if (f.group != gid) continue;
            for (AgentId m : f.members) {
                if (m >= first_agent[g] && m < first_agent[g] + gs.size && !placed[m - first_agent[g]]) {
                    placed[m - first_agent[g]] = true;
                    order.push_back(m);
                }
            }
        }
        for (std::size_t i = 0; i < gs.size; ++i) {
            if (!placed[i]) order.push_back(first_agent[g] + static_cast<AgentId>(i));
        }

        const std::size_t k = prejudiced_count(gs.prejudiced_fraction, gs.size);
        std::vector<GroupId> targets;
        for (const auto& t : gs.targets) targets.push_back(group_index.at(t));
        std::sort(targets.begin(), targets.end());

        std::vector<AgentId> prejudiced(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        for (AgentId a : prejudiced) {
            config.agents[a].kind = AgentKind::Prejudiced;
            config.agents[a].targets = targets;
        }
        if (k % nf != 0) {
            std::ostringstream note;
            note << "group " << gs.name << ": one faction mixes " << (k % nf) << " prejudiced and "
                 << (nf - k % nf) << " unprejudiced agents";
            config.notes.push_back(note.str());
        }

        if (gs.renegade_fraction > 0.0) {
            if (k == 0) {
                throw ConfigError("group " + gs.name +
                                  " has a renegade fraction but no prejudiced agents");
            }
            const std::size_t r = prejudiced_count(gs.renegade_fraction, k);
            std::vector<AgentId> chosen;
            std::sample(prejudiced.begin(), prejudiced.end(), std::back_inserter(chosen), r, rng);
            for (AgentId a : chosen) {
                config.agents[a].kind = AgentKind::Renegade;
                config.agents[a].targets = {gid};
            }
        }
    }

    validate(config);
    return config;
}

namespace {

std::string fraction_label(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << v;
    return os.str();
}

std::string gname(std::size_t index) { return "G" + std::to_string(index + 1); }

std::vector<std::string> all_but(std::size_t count, std::size_t self) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i != self) out.push_back(gname(i));
    }
    return out;
}

/// Groups of the given sizes where the first `prejudiced_groups` are fully
/// prejudiced against every other group.
std::vector<GroupScenario> mutual_groups(const std::vector<std::size_t>& sizes,
                                         std::size_t prejudiced_groups) {
    std::vector<GroupScenario> groups;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        GroupScenario g{gname(i), sizes[i], 0.0, {}, 0.0};
        if (i < prejudiced_groups) {
            g.prejudiced_fraction = 1.0;
            g.targets = all_but(sizes.size(), i);
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

/// Two groups; each prejudiced member targets the other group.
std::vector<GroupScenario> two_groups(std::size_t n1, double eps1, std::size_t n2, double eps2) {
    std::vector<GroupScenario> groups{{"G1", n1, eps1, {}, 0.0}, {"G2", n2, eps2, {}, 0.0}};
    if (eps1 > 0.0) groups[0].targets = {"G2"};
    if (eps2 > 0.0) groups[1].targets = {"G1"};
    return groups;
}

ScenarioSpec point(std::string label, std::vector<GroupScenario> groups) {
    ScenarioSpec s;
    s.label = std::move(label);
    s.groups = std::move(groups);
    return s;
}

const std::vector<double> kConcentrations{0.2, 0.4, 0.6, 0.8, 1.0};

ScenarioFamily r1_concentration() {
    ScenarioFamily fam{"r1_concentration",
                       "Two groups of 500; G1 prejudiced against G2 at varying concentration, G2 "
                       "unprejudiced.",
                       {}};
    for (double eps : kConcentrations) {
        fam.points.push_back(point("eps_" + fraction_label(eps), two_groups(500, eps, 500, 0.0)));
    }
    return fam;
}

ScenarioFamily r2_in_out() {
    ScenarioFamily fam{"r2_in_out",
                       "Ten groups of 100. G1..G5 unprejudiced; G(5+k) prejudiced against G1..Gk.",
                       {}};
    std::vector<GroupScenario> groups;
    for (std::size_t i = 0; i < 10; ++i) {
        GroupScenario g{gname(i), 100, 0.0, {}, 0.0};
        if (i >= 5) {
            g.prejudiced_fraction = 1.0;
            for (std::size_t t = 0; t < i - 4; ++t) g.targets.push_back(gname(t));
        }
        groups.push_back(std::move(g));
    }
    fam.points.push_back(point("table1", std::move(groups)));
    return fam;
}

ScenarioFamily r3_two_group_skew() {
    ScenarioFamily fam{"r3_two_group_skew",
                       "Two groups split 500-500 .. 900-100 (G1 is the majority) under four "
                       "prejudice configurations: both, g1_only, g2_only, none.",
                       {}};
    const std::vector<std::pair<std::size_t, std::size_t>> splits{
        {500, 500}, {600, 400}, {700, 300}, {800, 200}, {900, 100}};
    const std::vector<std::pair<std::string, std::pair<double, double>>> configs{
        {"both", {1.0, 1.0}}, {"g1_only", {1.0, 0.0}}, {"g2_only", {0.0, 1.0}}, {"none", {0.0, 0.0}}};
    for (const auto& [cname, eps] : configs) {
        for (const auto& [n1, n2] : splits) {
            fam.points.push_back(point(cname + "_" + std::to_string(n1) + "-" + std::to_string(n2),
                                       two_groups(n1, eps.first, n2, eps.second)));
        }
    }
    return fam;
}

ScenarioFamily r3_multigroup() {
    ScenarioFamily fam{"r3_multigroup",
                       "Four mutually prejudiced groups sized 1:2:3:4 (100, 200, 300, 400).", {}};
    fam.points.push_back(point("sizes_1-2-3-4", mutual_groups({100, 200, 300, 400}, 4)));
    return fam;
}

ScenarioFamily r4_renegades_two() {
    ScenarioFamily fam{"r4_renegades_two",
                       "Two mutually prejudiced groups of 500; a share of G2's prejudiced agents "
                       "are renegades targeting their own group.",
                       {}};
    for (double r : {0.1, 0.2}) {
        auto groups = two_groups(500, 1.0, 500, 1.0);
        groups[1].renegade_fraction = r;
        fam.points.push_back(point("renegades_" + fraction_label(r), std::move(groups)));
    }
    return fam;
}

ScenarioFamily r4_renegades_multi() {
    ScenarioFamily fam{"r4_renegades_multi",
                       "Five mutually prejudiced groups of 200; 10% of the prejudiced agents of G4 "
                       "and G5 are renegades.",
                       {}};
    auto groups = mutual_groups({200, 200, 200, 200, 200}, 5);
    groups[3].renegade_fraction = 0.1;
    groups[4].renegade_fraction = 0.1;
    fam.points.push_back(point("g4_g5_renegades_0.1", std::move(groups)));
    return fam;
}

ScenarioFamily r5_society_sweep() {
    ScenarioFamily fam{"r5_society_sweep",
                       "Separate societies of 1000. s2_unprejudiced is the reference; s1_eps_* "
                       "has both halves prejudiced against each other at the given fraction; "
                       "ladder_k has five groups of 200 with the first k prejudiced against all "
                       "others.",
                       {}};
    fam.points.push_back(point("s2_unprejudiced", two_groups(500, 0.0, 500, 0.0)));
    for (double eps : kConcentrations) {
        fam.points.push_back(point("s1_eps_" + fraction_label(eps), two_groups(500, eps, 500, eps)));
    }
    for (std::size_t k = 0; k <= 5; ++k) {
        fam.points.push_back(point("ladder_" + std::to_string(k),
                                   mutual_groups({200, 200, 200, 200, 200}, k)));
    }
    return fam;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "r1_concentration",   "r2_in_out",          "r3_two_group_skew", "r3_multigroup",
        "r4_renegades_two",   "r4_renegades_multi", "r5_society_sweep"};
    return names;
}

ScenarioFamily preset(std::string_view name) {
    if (name == "r1_concentration") return r1_concentration();
    if (name == "r2_in_out") return r2_in_out();
    if (name == "r3_two_group_skew") return r3_two_group_skew();
    if (name == "r3_multigroup") return r3_multigroup();
    if (name == "r4_renegades_two") return r4_renegades_two();
    if (name == "r4_renegades_multi") return r4_renegades_multi();
    if (name == "r5_society_sweep") return r5_society_sweep();
    throw UsageError("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
        }
    }
}

template <typename T>
void read_opt(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("params.") + key + ": " + e.what());
    }
}

Json interval_json(const Interval& r) { return Json::array({r.lo, r.hi}); }

Interval interval_from(const Json& j, const char* key) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(std::string("params.") + key + " must be a [lo, hi] pair");
    }
    if (!j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(std::string("params.") + key + " must hold two numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json to_json(const ModelParams& p) {
    Json j;
    j["memory_size"] = p.memory_size;
    j["faction_size"] = p.faction_size;
    j["payoff"] = {{"C", p.payoff.cooperate()},
                   {"T", p.payoff.temptation()},
                   {"D", p.payoff.defect()},
                   {"S", p.payoff.sucker()}};
    j["raise_prejudice_above"] = p.update.raise_prejudice_above;
    j["lower_prejudice_below"] = p.update.lower_prejudice_below;
    j["prejudice_step"] = p.update.prejudice_step;
    j["alignment_step"] = p.update.alignment_step;
    j["reinforce_band"] = interval_json(p.update.reinforce_band);
    j["loosen_band"] = interval_json(p.update.loosen_band);
    j["prejudice_mean"] = p.prejudice_mean;
    j["prejudice_stddev"] = p.prejudice_stddev;
    j["initial_alignment"] = p.initial_alignment;
    j["default_opinion"] = p.default_opinion;
    j["memory_semantics"] = std::string(to_string(p.memory_semantics));
    return j;
}

ModelParams params_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("params must be an object");
    reject_unknown_keys(j,
                        {"memory_size", "faction_size", "payoff", "raise_prejudice_above",
                         "lower_prejudice_below", "prejudice_step", "alignment_step",
                         "reinforce_band", "loosen_band", "prejudice_mean", "prejudice_stddev",
                         "initial_alignment", "default_opinion", "memory_semantics"},
                        "params");
    ModelParams p;
    read_opt(j, "memory_size", p.memory_size);
    read_opt(j, "faction_size", p.faction_size);
    if (j.contains("payoff")) {
        const auto& pj = j.at("payoff");
        if (!pj.is_object()) throw ConfigError("params.payoff must be an object");
        reject_unknown_keys(pj, {"C", "T", "D", "S"}, "params.payoff");
        try {
            p.payoff = PayoffParams(pj.value("C", 3.0), pj.value("T", 5.0), pj.value("D", 1.0),
                                    pj.value("S", 0.0));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("params.payoff: ") + e.what());
        }
    }
    read_opt(j, "raise_prejudice_above", p.update.raise_prejudice_above);
    read_opt(j, "lower_prejudice_below", p.update.lower_prejudice_below);
    read_opt(j, "prejudice_step", p.update.prejudice_step);
    read_opt(j, "alignment_step", p.update.alignment_step);
    if (j.contains("reinforce_band")) p.update.reinforce_band = interval_from(j.at("reinforce_band"), "reinforce_band");
    if (j.contains("loosen_band")) p.update.loosen_band = interval_from(j.at("loosen_band"), "loosen_band");
    read_opt(j, "prejudice_mean", p.prejudice_mean);
    read_opt(j, "prejudice_stddev", p.prejudice_stddev);
    read_opt(j, "initial_alignment", p.initial_alignment);
    read_opt(j, "default_opinion", p.default_opinion);
    if (j.contains("memory_semantics")) {
        const auto& mj = j.at("memory_semantics");
        if (!mj.is_string()) throw ConfigError("params.memory_semantics must be a string");
        const auto text = mj.get<std::string>();
        auto sem = parse_memory_semantics(text);
        if (!sem) throw ConfigError("params.memory_semantics must be 'partner' or 'own', got '" + text + "'");
        p.memory_semantics = *sem;
    }
    return p;
}

Json to_json(const ScenarioSpec& spec) {
    Json j;
    j["label"] = spec.label;
    j["iterations"] = spec.iterations;
    j["repetitions"] = spec.repetitions;
    j["stride"] = spec.stride;
    Json groups = Json::array();
    for (const auto& g : spec.groups) {
        groups.push_back({{"name", g.name},
                          {"size", g.size},
                          {"prejudiced_fraction", g.prejudiced_fraction},
                          {"targets", g.targets},
                          {"renegade_fraction", g.renegade_fraction}});
    }
    j["groups"] = std::move(groups);
    j["params"] = to_json(spec.params);
    if (!spec.factions.empty()) {
        Json factions = Json::array();
        for (const auto& f : spec.factions) {
            factions.push_back({{"group", f.group}, {"members", f.members}});
        }
        j["factions"] = std::move(factions);
    }
    return j;
}

ScenarioSpec scenario_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("scenario must be an object");
    reject_unknown_keys(j, {"label", "iterations", "repetitions", "stride", "groups", "params", "factions"},
                        "scenario");
    try {
        ScenarioSpec s;
        read_opt(j, "label", s.label);
        read_opt(j, "iterations", s.iterations);
        read_opt(j, "repetitions", s.repetitions);
        read_opt(j, "stride", s.stride);
        if (!j.contains("groups")) throw ConfigError("scenario " + s.label + ": missing 'groups'");
        for (const auto& gj : j.at("groups")) {
            reject_unknown_keys(gj, {"name", "size", "prejudiced_fraction", "targets", "renegade_fraction"},
                                "group");
            GroupScenario g;
            g.name = gj.at("name").get<std::string>();
            g.size = gj.at("size").get<std::size_t>();
            read_opt(gj, "prejudiced_fraction", g.prejudiced_fraction);
            read_opt(gj, "targets", g.targets);
            read_opt(gj, "renegade_fraction", g.renegade_fraction);
            s.groups.push_back(std::move(g));
        }
        if (j.contains("params")) s.params = params_from_json(j.at("params"));
        if (j.contains("factions")) {
            for (const auto& fj : j.at("factions")) {
                reject_unknown_keys(fj, {"group", "members"}, "faction");
                s.factions.push_back({fj.at("group").get<std::string>(),
                                      fj.at("members").get<std::vector<AgentId>>()});
            }
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
}

Json to_json(const ScenarioFamily& family) {
    Json j;
    j["name"] = family.name;
    j["description"] = family.description;
    Json points = Json::array();
    for (const auto& p : family.points) points.push_back(to_json(p));
    j["points"] = std::move(points);
    return j;
}

ScenarioFamily family_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("scenario file must hold a JSON object");
    if (!j.contains("points")) {
        ScenarioFamily fam;
        fam.points.push_back(scenario_from_json(j));
        fam.name = fam.points.front().label.empty() ? "scenario" : fam.points.front().label;
        if (fam.points.front().label.empty()) fam.points.front().label = fam.name;
        return fam;
    }
    reject_unknown_keys(j, {"name", "description", "points"}, "scenario family");
    ScenarioFamily fam;
    try {
        read_opt(j, "name", fam.name);
        read_opt(j, "description", fam.description);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed scenario family: ") + e.what());
    }
    if (!j.at("points").is_array() || j.at("points").empty()) {
        throw ConfigError("'points' must be a non-empty array");
    }
    std::set<std::string> labels;
    for (const auto& pj : j.at("points")) {
        auto s = scenario_from_json(pj);
        if (s.label.empty()) s.label = "point_" + std::to_string(fam.points.size());
        if (!labels.insert(s.label).second) throw ConfigError("duplicate point label " + s.label);
        fam.points.push_back(std::move(s));
    }
    return fam;
}

ScenarioFamily load_family(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open scenario file");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return family_from_json(j);
}

}  // namespace prejsim
