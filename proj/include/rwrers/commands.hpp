#pragma once

// The five batch subcommands as functions from a resolved configuration to
// result records plus a summary. File handling lives in the CLI.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rwrers/montecarlo.hpp"

namespace rwrers {

struct RunReport {
  std::string subcommand;
  std::vector<nlohmann::ordered_json> records;  // one JSONL line each
  nlohmann::ordered_json summary;
  bool passed = true;  // every property expected to hold did
};

std::vector<std::string> subcommand_names();

// Throws ConfigError for unknown subcommands and for configurations that
// do not meet the subcommand's hypotheses.
RunReport run_command(std::string_view subcommand, const ExperimentConfig& cfg);

RunReport stationarity_report(const ExperimentConfig& cfg);
RunReport counterexample_report(const ExperimentConfig& cfg);
RunReport kernel_check_report(const ExperimentConfig& cfg);
RunReport mtp_check_report(const ExperimentConfig& cfg);
RunReport alili_demo_report(const ExperimentConfig& cfg);

std::string to_jsonl(const RunReport& report);
// Columns are the union of record keys in order of first appearance.
std::string to_csv(const RunReport& report);

}  // namespace rwrers
