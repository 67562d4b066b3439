#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectrabound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotSatisfied = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectrabound::cli
