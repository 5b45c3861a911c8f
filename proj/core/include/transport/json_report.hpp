#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "transport/dataset.hpp"
#include "transport/diagnostics.hpp"
#include "transport/estimators.hpp"
#include "transport/replication.hpp"

namespace transport {

// Estimation report over one dataset: runs the requested methods, attaches
// diagnostics, and renders the stable JSON schema. A method that raises is
// reported as {"error", "message"} under its key instead of aborting the
// run; succeeded counts the methods that produced a value.
struct EstimateRun {
  std::string json;
  int succeeded = 0;
  bool any_numeric_error = false;
  // First method failure, so a caller can surface why a fully failed run
  // produced no values.
  std::string first_error_name;
  std::string first_error_message;
};

EstimateRun run_estimate_report(const StudyDataset& dataset,
                                const std::vector<Method>& methods,
                                const PropensityPolicy& policy, int gformula_degree,
                                std::optional<std::uint64_t> seed);

// Diagnostics-only report.
std::string diagnostics_report_json(const StudyDataset& dataset,
                                    std::optional<std::uint64_t> seed);

// Full study summary, including the per-replication estimate vectors and the
// retry log. Byte-deterministic for a given summary.
std::string replication_report_json(const ReplicationSummary& summary);

// {"error": <name>, "message": <what>} for the CLI error stream.
std::string error_json(const std::string& name, const std::string& message);

}  // namespace transport
