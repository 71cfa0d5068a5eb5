#pragma once

#include <iosfwd>

namespace cocf::cli {

// Exit codes of the command line tool.
enum ExitCode : int { kTrivial = 0, kNontrivial = 1, kDisagreement = 2, kUsage = 3 };

// Runs `cocf <subcommand> ...`; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cocf::cli
