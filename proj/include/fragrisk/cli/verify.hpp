#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fragrisk::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Worst observed error (or other measured quantity) and its limit.
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    /// Re-run each reporting subcommand twice and compare the bytes.
    bool cli_determinism = true;
};

/// Every analytic-vs-oracle check, each at its fixed tolerance.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace fragrisk::cli
