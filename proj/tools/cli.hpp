#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jdkelly::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kBadConfig = 2,
    kValidationFailed = 3,
    kNoConvergence = 4,
    kArbitrage = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 19880601;

// Runs one subcommand. Artifacts go to --out when given, otherwise to `out`;
// failures print a one-line JSON error record to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jdkelly::cli
