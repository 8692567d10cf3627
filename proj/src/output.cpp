#include "prejsim/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prejsim/errors.hpp"

namespace prejsim {

std::string format_fixed(double value) {
    if (std::isnan(value)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    // "-0.000000" and "0.000000" must not differ between otherwise equal runs.
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir, "cannot create directory: " + ec.message());
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void write_outputs(const RunResult& result, const std::filesystem::path& dir,
                   const std::vector<std::uint64_t>& seeds) {
    ensure_dir(dir);

    std::ostringstream series;
    series << "iteration,metric,selector,value\n";
    const Metric metrics[] = {Metric::Prosperity, Metric::Prejudice, Metric::Alignment};
    for (std::size_t t = 0; t < result.snapshot_iterations.size(); ++t) {
        for (Metric m : metrics) {
            for (std::size_t s = 0; s < result.selectors.size(); ++s) {
                if (m == Metric::Prejudice && result.selectors[s].targeted == 0) continue;
                const auto& values = m == Metric::Prosperity  ? result.prosperity[s]
                                     : m == Metric::Prejudice ? result.prejudice[s]
                                                              : result.alignment[s];
                series << result.snapshot_iterations[t] << ',' << to_string(m) << ','
                       << result.selectors[s].label << ',' << format_fixed(values[t]) << '\n';
            }
        }
    }
    write_file(dir / "series.csv", series.str());

    std::ostringstream summary;
    summary << "selector,agents,mean_prosperity,mean_prejudice,mean_alignment\n";
    for (std::size_t s = 0; s < result.selectors.size(); ++s) {
        const auto& info = result.selectors[s];
        summary << info.label << ',' << info.size << ',' << format_fixed(result.prosperity[s].back())
                << ',' << (info.targeted ? format_fixed(result.prejudice[s].back()) : "") << ','
                << format_fixed(result.alignment[s].back()) << '\n';
    }
    write_file(dir / "summary.csv", summary.str());

    const auto& meta = result.meta;
    const auto& p = meta.params;
    std::ostringstream m;
    m << "seed=" << meta.seed << '\n';
    m << "repetitions=" << meta.repetitions << '\n';
    if (!seeds.empty()) {
        m << "repetition_seeds=";
        for (std::size_t i = 0; i < seeds.size(); ++i) m << (i ? "," : "") << seeds[i];
        m << '\n';
    }
    m << "config_digest=" << hex(meta.config_digest) << '\n';
    m << "iterations=" << meta.iterations << '\n';
    m << "stride=" << meta.stride << '\n';
    m << "agents=" << meta.agent_count << '\n';
    m << "memory_semantics=" << to_string(p.memory_semantics) << '\n';
    m << "param.memory_size=" << p.memory_size << '\n';
    m << "param.faction_size=" << p.faction_size << '\n';
    m << "param.payoff_C=" << format_fixed(p.payoff.cooperate()) << '\n';
    m << "param.payoff_T=" << format_fixed(p.payoff.temptation()) << '\n';
    m << "param.payoff_D=" << format_fixed(p.payoff.defect()) << '\n';
    m << "param.payoff_S=" << format_fixed(p.payoff.sucker()) << '\n';
    m << "param.raise_prejudice_above=" << format_fixed(p.update.raise_prejudice_above) << '\n';
    m << "param.lower_prejudice_below=" << format_fixed(p.update.lower_prejudice_below) << '\n';
    m << "param.prejudice_step=" << format_fixed(p.update.prejudice_step) << '\n';
    m << "param.alignment_step=" << format_fixed(p.update.alignment_step) << '\n';
    m << "param.reinforce_band=" << format_fixed(p.update.reinforce_band.lo) << ','
      << format_fixed(p.update.reinforce_band.hi) << '\n';
    m << "param.loosen_band=" << format_fixed(p.update.loosen_band.lo) << ','
      << format_fixed(p.update.loosen_band.hi) << '\n';
    m << "param.prejudice_mean=" << format_fixed(p.prejudice_mean) << '\n';
    m << "param.prejudice_stddev=" << format_fixed(p.prejudice_stddev) << '\n';
    m << "param.initial_alignment=" << format_fixed(p.initial_alignment) << '\n';
    m << "param.default_opinion=" << format_fixed(p.default_opinion) << '\n';
    for (const auto& note : meta.notes) m << "note=" << note << '\n';
    write_file(dir / "run.meta", m.str());
}

void write_outputs(const AveragedResult& result, const std::filesystem::path& dir) {
    write_outputs(result.mean, dir, result.seeds);
}

void write_family_summary(const std::vector<PointSummary>& rows, const std::filesystem::path& dir) {
    ensure_dir(dir);
    std::ostringstream out;
    out << "point,agents,society_mean_prosperity\n";
    for (const auto& r : rows) {
        out << r.label << ',' << r.agents << ',' << format_fixed(r.society_prosperity) << '\n';
    }
    write_file(dir / "preset_summary.csv", out.str());
}

}  // namespace prejsim
