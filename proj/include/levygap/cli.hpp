#pragma once

#include <string>
#include <vector>

#include "levygap/config.hpp"

namespace levygap::cli {

// process exit codes
inline constexpr int kExitOk = 0;           // bounds / estimates produced
inline constexpr int kExitError = 1;        // computation failed (divergence, no signal)
inline constexpr int kExitNoBound = 2;      // hypotheses fail or no criterion applies
inline constexpr int kExitUnsupported = 3;  // symbol family cannot be simulated
inline constexpr int kExitUsage = 64;       // bad invocation or invalid config
inline constexpr int kExitSchema = 65;      // report file with wrong schema

/// Runs the analysis pipeline and writes <out_dir>/report.json and
/// <out_dir>/curves.csv. Returns kExitOk when at least one bound was
/// certified, kExitNoBound otherwise.
int cmd_analyze(const RunConfig& rc, const std::string& out_dir);

/// Samples the ensemble, fits the decay rate, estimates the return time and
/// writes <out_dir>/ensemble.json (plus paths.csv when requested). Returns
/// kExitOk, or kExitError when no rate signal exists, kExitUnsupported for
/// non-simulable symbols, kExitNoBound when the stationary measure is
/// infinite.
int cmd_simulate(const RunConfig& rc, const std::string& out_dir);

/// Merges analysis reports into <out_dir>/bounds.csv and <out_dir>/curves.csv.
/// Returns kExitUsage on an empty input list, kExitSchema on a document that
/// is not a report.
int cmd_report(const std::vector<std::string>& report_paths, const std::string& out_dir);

}  // namespace levygap::cli
