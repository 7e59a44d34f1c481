#pragma once

// Versioned JSON round-trip for trained agents and normalization bounds.

#include <string>

#include "wwtp/maddpg.hpp"

namespace wwtp::marl {

// {"version":1, "agents":[...], "bounds":{...}, "train_config":{...}}
std::string agents_to_json(const Agents& agents, const impacts::NormalizationBounds& bounds,
                           const TrainConfig& tc);

struct LoadedAgents {
    Agents agents;
    impacts::NormalizationBounds bounds;
};
LoadedAgents agents_from_json(const std::string& text);

void save_agents(const std::string& path, const Agents& agents,
                 const impacts::NormalizationBounds& bounds, const TrainConfig& tc);
LoadedAgents load_agents(const std::string& path);

}  // namespace wwtp::marl
