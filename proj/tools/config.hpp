#pragma once

// Maps every tunable of the simulation, impact model and trainer onto CLI11
// options (and therefore onto one TOML config file with matching sections).

#include <CLI11.hpp>

#include "wwtp/scenarios.hpp"

namespace wwtp::cli {

struct RunConfig {
    scenarios::RunConfig run;       // env + reward template + train template + seeds
    std::string out_dir = "out";
};

// Registers --<section>.<key> options for each configuration field, all with
// units in the help text, plus --config for the TOML file.
void attach_options(CLI::App& app, RunConfig& cfg);

}  // namespace wwtp::cli
