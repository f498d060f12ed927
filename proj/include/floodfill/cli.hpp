#pragma once

#include <ostream>

namespace floodfill {

/// Exit codes of the floodfill command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDataError = 2,
  kExitVerifyFailed = 3,
};

/// Entry point of the `floodfill` tool; subcommands fill, fill-eps, flowdirs,
/// watersheds, verify, synth and bench. Returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace floodfill
