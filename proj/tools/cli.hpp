#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace classif::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `classif` invocation. JSON goes to `out` (or the --out file),
/// human-readable summaries and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace classif::cli
