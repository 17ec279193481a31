#ifndef FAIRMAB_CONFIG_IO_HPP
#define FAIRMAB_CONFIG_IO_HPP

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "fairmab/env.hpp"
#include "fairmab/experiment.hpp"

namespace fairmab {

// Schema: docs/config.md. All parse errors surface as InvalidConfig.

EnvironmentConfig environment_from_json(const nlohmann::json& j);
nlohmann::json environment_to_json(const EnvironmentConfig& config);

/// Reads a config file. The optional "experiment" object fills policies,
/// horizon, runs, seed and checkpoints; missing fields keep `base`'s values.
ExperimentSpec experiment_from_json(const nlohmann::json& j, ExperimentSpec base = {});

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace fairmab

#endif  // FAIRMAB_CONFIG_IO_HPP
