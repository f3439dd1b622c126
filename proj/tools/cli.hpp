#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace redcalc::cli {

enum ExitCode : int {
    ok = 0,
    verify_failed = 1,
    parse_error = 2,
    domain_error = 3,
    mismatch = 4,
    resource_cap = 5,
};

/// Runs the command line `args` (without the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace redcalc::cli
