#pragma once

#include "yamabe/cli/config.hpp"

#include <iosfwd>

namespace yamabe::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kConfigError = 2, kPartial = 3 };

struct CommandContext {
    RunConfig config;
    std::ostream* log = nullptr;  ///< progress messages when verbose, else null
};

int cmd_check(const CommandContext& ctx);
int cmd_example1(const CommandContext& ctx);
int cmd_solve(const CommandContext& ctx);

/// Full command line: `yamabe check|example1|solve <config.json> [--out DIR]
/// [--seed N] [--verbose]`. Errors go to stderr; returns the exit code.
int run_cli(int argc, char** argv);

} // namespace yamabe::cli
