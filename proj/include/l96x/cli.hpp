#pragma once

#include <string>
#include <vector>

namespace l96x {

/// Command-line frontend.  `args` holds the arguments after the program
/// name (subcommand first).  Returns the process exit code: 0 on success,
/// 1 when the requested analysis fails on valid input (domain errors), 2 on
/// usage errors (unknown flags, malformed expressions or files).
int run_cli(const std::vector<std::string>& args);

/// main()-style entry point; forwards to the vector overload.
int run_cli(int argc, const char* const* argv);

}  // namespace l96x
