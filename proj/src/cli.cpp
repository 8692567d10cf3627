#include "prejsim/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "prejsim/errors.hpp"
#include "prejsim/output.hpp"
#include "prejsim/runner.hpp"
#include "prejsim/scenario.hpp"

namespace prejsim {

namespace {

struct RunOptions {
    std::string preset;
    std::string scenario;
    std::uint64_t seed = 42;
    std::optional<std::uint64_t> iterations;
    std::optional<std::size_t> repetitions;
    std::optional<std::uint64_t> stride;
    std::string out_dir;
    std::string memory_semantics;
    std::vector<std::string> points;
    unsigned threads = 0;
};

ScenarioFamily resolve_family(const RunOptions& opts) {
    if (!opts.preset.empty()) return preset(opts.preset);
    return load_family(opts.scenario);
}

int do_run(const RunOptions& opts, std::ostream& out) {
    ScenarioFamily family = resolve_family(opts);
    for (const auto& wanted : opts.points) family.point(wanted);   // reject unknown labels early

    std::optional<MemorySemantics> semantics;
    if (!opts.memory_semantics.empty()) {
        semantics = parse_memory_semantics(opts.memory_semantics);
        if (!semantics) throw UsageError("--memory-semantics must be 'partner' or 'own'");
    }

    const std::filesystem::path root(opts.out_dir);
    std::vector<PointSummary> rows;
    for (ScenarioSpec spec : family.points) {
        if (!opts.points.empty() &&
            std::find(opts.points.begin(), opts.points.end(), spec.label) == opts.points.end()) {
            continue;
        }
        if (opts.iterations) spec.iterations = *opts.iterations;
        if (opts.repetitions) spec.repetitions = *opts.repetitions;
        if (opts.stride) spec.stride = *opts.stride;
        if (semantics) spec.params.memory_semantics = *semantics;

        Rng build_rng(opts.seed);
        const SocietyConfig config = build_scenario(spec, build_rng);
        const auto result = run_repeated(config, opts.seed, spec.repetitions, spec.iterations,
                                         spec.stride, opts.threads);
        write_outputs(result, root / spec.label);
        const double society = result.mean.final_value(Metric::Prosperity, "society");
        rows.push_back({spec.label, config.agent_count(), society});
        out << spec.label << ": society mean prosperity " << format_fixed(society) << " -> "
            << (root / spec.label).string() << '\n';
    }
    write_family_summary(rows, root);
    return kExitOk;
}

int do_validate(const std::string& path, std::ostream& out) {
    const ScenarioFamily family = load_family(path);
    for (const auto& spec : family.points) {
        Rng rng(0);
        try {
            build_scenario(spec, rng);
        } catch (const ConfigError& e) {
            throw ConfigError("point " + spec.label + ": " + e.what());
        }
    }
    out << path << ": ok (" << family.points.size() << " point"
        << (family.points.size() == 1 ? "" : "s") << ")\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prejudice propagation simulator for group-structured CPD societies", "prejsim"};
    app.require_subcommand(1);

    RunOptions run_opts;
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        run_opts.out_dir = env;
    } else {
        run_opts.out_dir = "out";
    }
    auto* run_cmd = app.add_subcommand("run", "Run a preset or scenario file and write outputs");
    auto* preset_opt = run_cmd->add_option("--preset", run_opts.preset, "Preset name");
    auto* scenario_opt = run_cmd->add_option("--scenario,scenario", run_opts.scenario, "Scenario file");
    preset_opt->excludes(scenario_opt);
    run_cmd->add_option("--seed", run_opts.seed, "Base seed")->capture_default_str();
    run_cmd->add_option("--iterations", run_opts.iterations, "Interactions per run")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--repetitions", run_opts.repetitions, "Independent runs per point")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--stride", run_opts.stride, "Snapshot stride")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run_opts.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--memory-semantics", run_opts.memory_semantics, "partner | own");
    run_cmd->add_option("--point", run_opts.points, "Only run the named sweep point(s)");
    run_cmd->add_option("--threads", run_opts.threads, "Worker threads (0 = all cores)");

    std::string preset_name;
    auto* preset_cmd = app.add_subcommand("preset", "Print the expanded scenario family of a preset");
    preset_cmd->add_option("name", preset_name, "Preset name")->required();

    auto* list_cmd = app.add_subcommand("list-presets", "List the built-in presets");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("file", validate_path, "Scenario file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run_cmd) {
            if (run_opts.preset.empty() && run_opts.scenario.empty()) {
                throw UsageError("run needs --preset NAME or a scenario file");
            }
            return do_run(run_opts, out);
        }
        if (*preset_cmd) {
            out << to_json(preset(preset_name)).dump(2) << '\n';
            return kExitOk;
        }
        if (*list_cmd) {
            for (const auto& name : preset_names()) {
                out << name << "  " << preset(name).description << '\n';
            }
            return kExitOk;
        }
        if (*validate_cmd) return do_validate(validate_path, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace prejsim
