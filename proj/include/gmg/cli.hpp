#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/**
 * Entry point of the `gmg` tool. `args` excludes the program name.
 * Subcommands: ged, set-median, median, sod-table, classify.
 * Returns 0 on success, 1 on a usage or configuration error, 2 on a data error.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gmg::cli
