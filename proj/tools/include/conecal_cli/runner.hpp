#pragma once

#include <string>

#include "conecal_cli/config.hpp"
#include "conecal_cli/report.hpp"

namespace conecal::cli {

// Exit codes of the batch front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitIoError = 3;

/// Dispatches the configured command, writes report.json and the per-command
/// CSV tables under out_dir (created if absent), and returns the exit code.
/// When `out` is non-null the assembled report is copied there as well.
int run(const RunConfig& config, const std::string& out_dir, bool verbose,
        Report* out = nullptr);

}  // namespace conecal::cli
