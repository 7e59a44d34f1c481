#pragma once

// Per-agent observation vectors: the last five completed control intervals,
// each contributing influent quality, inflow, a cyclic time encoding, and the
// agent's own control variable, every feature scaled to a fixed range.

#include <span>
#include <vector>

#include "wwtp/env.hpp"
#include "wwtp/influent.hpp"

namespace wwtp::marl {

enum class AgentId { Do = 0, Dose = 1 };

inline constexpr int kHistoryLen = 5;
inline constexpr int kFeaturesPerStep = 8;
inline constexpr int kObsSize = kHistoryLen * kFeaturesPerStep;

// Fixed feature bounds derived from the influent configuration and the
// action box, so scaling never depends on run history.
struct ObsScaler {
    influent::InfluentEnvelope envelope;
    static ObsScaler from(const influent::InfluentConfig& cfg);
};

// history must hold exactly kHistoryLen completed intervals, oldest first.
// Throws std::invalid_argument on a short history.
std::vector<double> build_observation(std::span<const env::IntervalRecord> history,
                                      AgentId agent, const ObsScaler& scaler);

}  // namespace wwtp::marl
