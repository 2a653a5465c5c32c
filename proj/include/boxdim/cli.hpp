#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boxdim::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kIndeterminate = 3;

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// (or the --output file); diagnostics and timing go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boxdim::cli
