#ifndef NOISEMAX_TOOLS_CLI_HPP
#define NOISEMAX_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace noisemax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `noisemax` tool. args excludes the program name.
/// Subcommands: gumbel | conditions | covariance | selftest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisemax::cli

#endif  // NOISEMAX_TOOLS_CLI_HPP
