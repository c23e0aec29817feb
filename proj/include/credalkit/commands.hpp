#pragma once

#include <string>
#include <vector>

namespace credalkit {

struct CommandResult {
    int exit_code; // 0 ok, 1 usage/parse, 2 operator precondition, 3 failed check
    std::string out;
    std::string err;
};

/// Runs the command line ("adjust", "check", "envelope") against the given
/// arguments, without touching the process state. Output is deterministic:
/// identical inputs produce identical bytes.
CommandResult run_cli(const std::vector<std::string>& args);

} // namespace credalkit
