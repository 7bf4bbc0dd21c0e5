#pragma once

// Experiment configuration files: flat JSON objects. Every key is optional;
// load_config fills defaults and rejects inconsistent combinations. The key
// set is documented in docs/output_format.md.

#include <string>
#include <string_view>

#include "json.hpp"
#include "rwrers/montecarlo.hpp"

namespace rwrers {

// Accepts either a config object or a run manifest (whose "config" member
// is used). Throws ConfigError naming the offending key(s). When the seed
// is missing a fresh one is drawn and *seed_generated is set.
ExperimentConfig load_config(const nlohmann::json& j, bool* seed_generated = nullptr);
ExperimentConfig load_config_text(std::string_view text, bool* seed_generated = nullptr);

// Fully resolved form; load_config(serialize_config(cfg)) == cfg.
nlohmann::json serialize_config(const ExperimentConfig& cfg);

// Cross-field rules shared by load_config and the subcommands.
void validate_config(const ExperimentConfig& cfg);

}  // namespace rwrers
