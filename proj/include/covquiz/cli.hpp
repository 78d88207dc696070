#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace covquiz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `covquiz` invocation. Machine-readable output goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on a domain error and 2 on
/// an I/O or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covquiz::cli
