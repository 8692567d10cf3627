#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prejsim/interaction.hpp"
#include "prejsim/model.hpp"
#include "prejsim/society.hpp"

namespace prejsim {

/// A subset of agents summarised in the time series: the whole society, a
/// group, an agent kind, or a kind within a group.
struct Selector {
    std::optional<GroupId> group;
    std::optional<AgentKind> kind;
    friend bool operator==(const Selector&, const Selector&) = default;
};

enum class Metric { Prosperity, Prejudice, Alignment };
std::string_view to_string(Metric metric);

struct SelectorInfo {
    Selector selector;
    std::string label;          // "society", "G1", "prejudiced", "G1:prejudiced"
    std::size_t size = 0;       // agents in the selection
    std::size_t targeted = 0;   // of which hold a non-empty target set
    friend bool operator==(const SelectorInfo&, const SelectorInfo&) = default;
};

struct RunMeta {
    std::uint64_t seed = 0;
    std::uint64_t config_digest = 0;
    std::uint64_t iterations = 0;
    std::uint64_t stride = 0;
    std::size_t repetitions = 1;
    std::size_t agent_count = 0;
    ModelParams params;
    std::vector<std::string> notes;
    friend bool operator==(const RunMeta&, const RunMeta&) = default;
};

/// Recorded time series of one run (or the element-wise mean of several).
/// Series are indexed [selector][snapshot]. Prejudice is NaN for selections
/// with no targeted agents.
struct RunResult {
    RunMeta meta;
    std::vector<std::uint64_t> snapshot_iterations;
    std::vector<SelectorInfo> selectors;
    std::vector<std::vector<double>> prosperity;
    std::vector<std::vector<double>> prejudice;
    std::vector<std::vector<double>> alignment;
    std::vector<double> final_prosperity;   // per agent

    /// Throws UsageError for unknown labels.
    std::size_t selector_index(std::string_view label) const;
    const std::vector<double>& series(Metric metric, std::string_view label) const;
    double final_value(Metric metric, std::string_view label) const;
};

/// Exact equality, with NaN equal to NaN (bitwise comparison of all series).
bool identical(const RunResult& a, const RunResult& b);

struct AveragedResult {
    RunResult mean;
    std::size_t repetitions = 0;
    std::vector<std::uint64_t> seeds;
};

using StepObserver = std::function<void(const InteractionRecord&, const SocietyState&)>;

/// Selectors for a config: society, each group, each kind present, each
/// (group, kind) pair present.
std::vector<SelectorInfo> selectors_for(const SocietyConfig& config);

/// Runs `iterations` interactions from a fresh society seeded by `seed`.
/// Snapshots are taken at t = 0, every `stride` steps, and at t = iterations.
/// Throws DomainError if stride is 0.
RunResult run(const SocietyConfig& config, std::uint64_t seed, std::uint64_t iterations,
              std::uint64_t stride, const StepObserver& observer = {});

/// Seed of repetition `index`: SplitMix64 applied to
/// base_seed + 0x9E3779B97F4A7C15 * (index + 1).
std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t index);

/// Element-wise mean of runs that share a config and schedule.
AveragedResult average(const std::vector<RunResult>& runs);

/// Runs `repetitions` independently seeded runs, `threads` at a time
/// (0 = hardware concurrency), and averages them in index order.
AveragedResult run_repeated(const SocietyConfig& config, std::uint64_t base_seed,
                            std::size_t repetitions, std::uint64_t iterations,
                            std::uint64_t stride, unsigned threads = 0);

}  // namespace prejsim
