#pragma once

#include "bqs/csvio.hpp"
#include "bqs/error.hpp"

#include <iosfwd>
#include <string>

namespace bqs {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitData = 3,
    kExitStorage = 4,
};

int exit_code_for(ErrorCode code);

/// Resolves an input spec: a CSV path, "-" for stdin, "gen:walk[:seed[:n]]"
/// or "gen:<shape>[:n]".
Trace load_input(const std::string& spec, bool geo);

/// Entry point of the `bqs` tool. Output goes to `out`, diagnostics to
/// `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bqs
