#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "prejsim/runner.hpp"

namespace prejsim {

/// Writes series.csv, summary.csv and run.meta into `dir` (created if
/// missing). All numbers use six decimals so identical runs give identical
/// bytes. Throws IoError naming the offending path.
///
/// series.csv  iteration,metric,selector,value   (prejudice rows only for
///             selections with targeted agents)
/// summary.csv selector,agents,mean_prosperity,mean_prejudice,mean_alignment
/// run.meta    key=value lines: seeds, digest, schedule, parameters, notes
void write_outputs(const RunResult& result, const std::filesystem::path& dir,
                   const std::vector<std::uint64_t>& seeds = {});
void write_outputs(const AveragedResult& result, const std::filesystem::path& dir);

struct PointSummary {
    std::string label;
    std::size_t agents = 0;
    double society_prosperity = 0.0;
};

/// preset_summary.csv: point,agents,society_mean_prosperity (one row per point).
void write_family_summary(const std::vector<PointSummary>& rows, const std::filesystem::path& dir);

std::string format_fixed(double value);

}  // namespace prejsim
