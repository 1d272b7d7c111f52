#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace urnnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs the urnnet command line. args[0] is the program name. Primary
// output goes to files named by flags or to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urnnet::cli
