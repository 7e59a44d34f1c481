#pragma once

// CSV and JSON artifacts: episode logs, training logs, the cumulative-delta
// table, component breakdowns and the summary document. Readers exist so the
// summary can be rebuilt from logs alone.

#include <string>
#include <vector>

#include "wwtp/maddpg.hpp"
#include "wwtp/scenarios.hpp"

namespace wwtp::report {

void write_episode_csv(const std::string& path, const scenarios::EpisodeLog& log);
scenarios::EpisodeLog read_episode_csv(const std::string& path);

void write_train_log_csv(const std::string& path,
                         const std::vector<marl::TrainLogRow>& rows);

void write_influent_csv(const std::string& path,
                        const std::vector<influent::InfluentRecord>& records);

void write_fluxes_csv(const std::string& path,
                      const std::vector<std::pair<double, plant::StepFluxes>>& rows);
std::vector<std::pair<double, plant::StepFluxes>> read_fluxes_csv(const std::string& path);

// Aggregated outputs over all scenario results. The baseline result must be
// present among `results`.
void write_summary_json(const std::string& path,
                        const std::vector<scenarios::ScenarioResult>& results);
void write_table3_csv(const std::string& path,
                      const std::vector<scenarios::ScenarioResult>& results);
void write_breakdown_csv(const std::string& path,
                         const std::vector<scenarios::ScenarioResult>& results);

void write_impact_json(const std::string& path, const impacts::ImpactVector& iv);
void write_impact_csv(const std::string& path, const impacts::ImpactVector& iv);

void write_bounds_json(const std::string& path, const impacts::NormalizationBounds& b,
                       int samples, std::uint64_t seed);
impacts::NormalizationBounds read_bounds_json(const std::string& path);

}  // namespace wwtp::report
