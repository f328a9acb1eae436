#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace silvarisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, unreadable or invalid config
inline constexpr int kExitNumerical = 2;  // quadrature or simulation failure

// Subcommands: compare, sweep, oracle, recovery. The config comes from
// --config, else $SILVARISK_CONFIG, else the built-in Austrian spruce data.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace silvarisk::cli
