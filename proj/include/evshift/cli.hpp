#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evshift::cli {

enum ExitCode : int
{
    kOk = 0,
    kUsageError = 1,
    kDataError = 2,
    kSolverError = 3,
};

// Runs one command line. `args` excludes the program name. Diagnostics go
// to `err`, regular output to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace evshift::cli
