#include "prejsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "prejsim/errors.hpp"

namespace prejsim {

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::Prosperity: return "prosperity";
        case Metric::Prejudice: return "prejudice";
        case Metric::Alignment: return "alignment";
    }
    return "unknown";
}

std::size_t RunResult::selector_index(std::string_view label) const {
    for (std::size_t i = 0; i < selectors.size(); ++i) {
        if (selectors[i].label == label) return i;
    }
    throw UsageError("no selector '" + std::string(label) + "' in this result");
}

const std::vector<double>& RunResult::series(Metric metric, std::string_view label) const {
    const auto i = selector_index(label);
    switch (metric) {
        case Metric::Prosperity: return prosperity[i];
        case Metric::Prejudice: return prejudice[i];
        case Metric::Alignment: return alignment[i];
    }
    throw UsageError("unknown metric");
}

double RunResult::final_value(Metric metric, std::string_view label) const {
    return series(metric, label).back();
}

bool identical(const RunResult& a, const RunResult& b) {
    auto same = [](const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].size() != y[i].size()) return false;
            if (!x[i].empty() && std::memcmp(x[i].data(), y[i].data(), x[i].size() * sizeof(double)) != 0) {
                return false;
            }
        }
        return true;
    };
    return a.meta == b.meta && a.snapshot_iterations == b.snapshot_iterations &&
           a.selectors == b.selectors && same(a.prosperity, b.prosperity) &&
           same(a.prejudice, b.prejudice) && same(a.alignment, b.alignment) &&
           a.final_prosperity == b.final_prosperity;
}

namespace {

constexpr AgentKind kKinds[] = {AgentKind::Unprejudiced, AgentKind::Prejudiced, AgentKind::Renegade};

bool matches(const Selector& s, const AgentSpec& a) {
    return (!s.group || *s.group == a.group) && (!s.kind || *s.kind == a.kind);
}

std::string group_name(const SocietyConfig& config, GroupId g) {
    return config.groups[g].name.empty() ? "G" + std::to_string(g + 1) : config.groups[g].name;
}

}  // namespace

std::vector<SelectorInfo> selectors_for(const SocietyConfig& config) {
    std::vector<Selector> candidates{Selector{}};
    for (const auto& g : config.groups) candidates.push_back({g.id, std::nullopt});
    for (AgentKind k : kKinds) candidates.push_back({std::nullopt, k});
    for (const auto& g : config.groups) {
        for (AgentKind k : kKinds) candidates.push_back({g.id, k});
    }

    std::vector<SelectorInfo> out;
    for (const auto& s : candidates) {
        SelectorInfo info{s, {}, 0, 0};
        for (const auto& a : config.agents) {
            if (!matches(s, a)) continue;
            ++info.size;
            if (!a.targets.empty()) ++info.targeted;
        }
        if (info.size == 0) continue;
        if (!s.group && !s.kind) {
            info.label = "society";
        } else if (!s.kind) {
            info.label = group_name(config, *s.group);
        } else if (!s.group) {
            info.label = std::string(to_string(*s.kind));
        } else {
            info.label = group_name(config, *s.group) + ":" + std::string(to_string(*s.kind));
        }
        out.push_back(std::move(info));
    }
    return out;
}

namespace {

struct SnapshotRecorder {
    std::vector<std::vector<AgentId>> members;

    SnapshotRecorder(const SocietyConfig& config, const std::vector<SelectorInfo>& selectors) {
        for (const auto& info : selectors) {
            std::vector<AgentId> m;
            for (std::size_t a = 0; a < config.agents.size(); ++a) {
                if (matches(info.selector, config.agents[a])) m.push_back(static_cast<AgentId>(a));
            }
            members.push_back(std::move(m));
        }
    }

    void take(const SocietyState& state, RunResult& out) const {
        out.snapshot_iterations.push_back(state.iteration);
        for (std::size_t s = 0; s < members.size(); ++s) {
            double pros = 0.0, align = 0.0, prej = 0.0;
            std::size_t prej_n = 0;
            for (AgentId a : members[s]) {
                const auto& agent = state.agents[a];
                pros += agent.prosperity;
                align += agent.faction_alignment;
                for (const auto& [g, p] : agent.prejudice) {
                    prej += p;
                    ++prej_n;
                }
            }
            const auto n = static_cast<double>(members[s].size());
            out.prosperity[s].push_back(pros / n);
            out.alignment[s].push_back(align / n);
            out.prejudice[s].push_back(prej_n ? prej / static_cast<double>(prej_n)
                                              : std::numeric_limits<double>::quiet_NaN());
        }
    }
};

}  // namespace

RunResult run(const SocietyConfig& config, std::uint64_t seed, std::uint64_t iterations,
              std::uint64_t stride, const StepObserver& observer) {
    if (stride == 0) throw DomainError("snapshot stride must be at least 1");
    Rng rng(seed);
    SocietyState state = new_society(config, rng);

    RunResult result;
    result.meta = RunMeta{seed,   digest(config),  iterations,   stride,
                          1,      config.agent_count(), config.params, config.notes};
    result.selectors = selectors_for(config);
    const std::size_t k = result.selectors.size();
    result.prosperity.resize(k);
    result.prejudice.resize(k);
    result.alignment.resize(k);

    const SnapshotRecorder recorder(config, result.selectors);
    recorder.take(state, result);
    for (std::uint64_t t = 1; t <= iterations; ++t) {
        const auto rec = step(state, rng);
        if (observer) observer(rec, state);
        if (t % stride == 0 || t == iterations) recorder.take(state, result);
    }

    result.final_prosperity.reserve(state.agents.size());
    for (const auto& a : state.agents) result.final_prosperity.push_back(a.prosperity);
    return result;
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t index) {
    std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

AveragedResult average(const std::vector<RunResult>& runs) {
    if (runs.empty()) throw DomainError("cannot average zero runs");
    AveragedResult out;
    out.mean = runs.front();
    out.repetitions = runs.size();
    for (const auto& r : runs) out.seeds.push_back(r.meta.seed);
    out.mean.meta.repetitions = runs.size();
    if (runs.size() == 1) return out;

    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].snapshot_iterations != out.mean.snapshot_iterations ||
            runs[i].selectors != out.mean.selectors) {
            throw DomainError("runs being averaged differ in schedule or selectors");
        }
    }
    const double inv = 1.0 / static_cast<double>(runs.size());
    auto mean_of = [&](auto member) {
        auto& dst = out.mean.*member;
        for (std::size_t s = 0; s < dst.size(); ++s) {
            for (std::size_t t = 0; t < dst[s].size(); ++t) {
                double sum = 0.0;
                for (const auto& r : runs) sum += (r.*member)[s][t];
                dst[s][t] = sum * inv;
            }
        }
    };
    mean_of(&RunResult::prosperity);
    mean_of(&RunResult::prejudice);
    mean_of(&RunResult::alignment);
    for (std::size_t a = 0; a < out.mean.final_prosperity.size(); ++a) {
        double sum = 0.0;
        for (const auto& r : runs) sum += r.final_prosperity[a];
        out.mean.final_prosperity[a] = sum * inv;
    }
    return out;
}

AveragedResult run_repeated(const SocietyConfig& config, std::uint64_t base_seed,
                            std::size_t repetitions, std::uint64_t iterations,
                            std::uint64_t stride, unsigned threads) {
    if (repetitions == 0) throw DomainError("repetitions must be at least 1");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, repetitions));

    std::vector<RunResult> runs(repetitions);
    if (threads <= 1) {
        for (std::size_t i = 0; i < repetitions; ++i) {
            runs[i] = run(config, repetition_seed(base_seed, i), iterations, stride);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < repetitions; i = next++) {
                        runs[i] = run(config, repetition_seed(base_seed, i), iterations, stride);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        workers.clear();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    auto out = average(runs);
    out.mean.meta.seed = base_seed;
    return out;
}

}  // namespace prejsim
