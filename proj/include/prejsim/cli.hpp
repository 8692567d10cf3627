#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prejsim {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitConfig = 3,
    kExitIo = 4,
};

/// Environment variable consulted for the default `run --out` directory.
inline constexpr const char* kOutDirEnv = "PREJSIM_OUT_DIR";

/// Entry point of the `prejsim` tool. `args` excludes the program name.
/// Subcommands: run, preset, list-presets, validate.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prejsim
