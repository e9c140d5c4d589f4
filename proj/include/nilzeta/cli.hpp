#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilzeta {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitBudget = 2,
    kExitUnsupported = 3,
    kExitMismatch = 4,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

} // namespace nilzeta
