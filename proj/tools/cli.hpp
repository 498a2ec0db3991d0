#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace infogeo::cli {

/// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kGoldenMismatch = 2;

/// Runs the tool on argv[1..]; output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infogeo::cli
