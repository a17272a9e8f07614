#pragma once

#include <string>
#include <vector>

#include "enrichfp/config.hpp"
#include "enrichfp/json.hpp"

namespace enrichfp {

inline constexpr int kExitOk = 0;
/// A violation, non-convergence, failed probe or non-configuration error.
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

std::string_view version() noexcept;

struct RunOptions {
    bool quiet = false;
    /// When false nothing is written; the report is only returned.
    bool write_files = true;
};

struct RunResult {
    int exit_status = kExitOk;
    /// Everything that goes into report.json.
    Json report;
    /// Extra artifacts by file name (trace.csv, sequence.csv).
    std::vector<std::pair<std::string, std::string>> tables;
    /// One line per finding, for the terminal.
    std::vector<std::string> summary;
};

/// Executes one configured run. Module errors are caught and recorded in the
/// report (category + message) with the matching exit status.
///
/// Files in cfg.output: config.json, report.json, trace.csv (solve),
/// sequence.csv (stability), manifest.json. Only the manifest carries a
/// timestamp, so report bodies are byte-identical for identical configs.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

/// Human-readable listing of spaces, pairs and contraction families.
std::string list_registry();

}  // namespace enrichfp
