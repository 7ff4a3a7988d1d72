#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "levygap/bounds.hpp"
#include "levygap/config.hpp"
#include "levygap/simulate.hpp"

namespace levygap::report {

inline constexpr const char* kReportSchema = "levygap-report/1";
inline constexpr const char* kEnsembleSchema = "levygap-ensemble/1";

/// Full analysis report: conditions, functionals, every computed bound with
/// its validity flags, the objective curve, tolerances and config provenance.
nlohmann::ordered_json report_to_json(const cli::RunConfig& rc,
                                      const bounds::ErgodicityReport& rep);

/// Simulation summary: ensemble statistics per output time, the fitted decay
/// rate with its CI, the return-time estimate, and the bound-vs-rate
/// comparison verdict. Deliberately carries no timing or thread-count fields
/// so the bytes depend only on (config, seed).
nlohmann::ordered_json ensemble_to_json(const cli::RunConfig& rc, const sim::PathEnsemble& ens,
                                        const sim::DecayEstimate* decay,
                                        const sim::ReturnTimeEstimate* ret,
                                        const nlohmann::ordered_json& comparison);

/// Objective-curve table (x, H, mu_tail, objective) of one report.
std::string curves_csv(const nlohmann::ordered_json& report);

/// One row per report: name, status, and every scalar bound with tolerances.
/// Throws SchemaError when a document is not a levygap-report/1.
std::string merged_bounds_csv(const std::vector<nlohmann::ordered_json>& reports);

/// Merged objective curves of several reports, keyed by report name.
std::string merged_curves_csv(const std::vector<nlohmann::ordered_json>& reports);

/// Long-format per-path table (path, t, y) of a sampled ensemble.
std::string paths_csv(const sim::PathEnsemble& ens);

void write_text_file(const std::string& path, const std::string& contents);
void write_json_file(const std::string& path, const nlohmann::ordered_json& doc);
nlohmann::ordered_json read_json_file(const std::string& path);

}  // namespace levygap::report
