#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphcub::cli {

/// Exit codes of `run`.
enum Exit : int { ok = 0, failure = 1, usage = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphcub::cli
