#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fragrisk::cli {

inline constexpr const char* kOutputDirEnv = "FRAGRISK_OUTPUT_DIR";

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` unless --out is given; diagnostics go to `err`. Output files are
/// written only after every computation succeeded.
/// Returns 0 on success, 1 for domain or verification failures, 2 for
/// usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fragrisk::cli
