#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpicard::cli {

/// Runs one command line (without the program name). Artifacts go to out
/// (or --output), diagnostics to err.
///
/// Exit status: 0 on success, 1 on domain errors, 2 on malformed input.
/// Failures also print {"error":{"code":..,"message":..}} to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpicard::cli
