#pragma once

// Control-interval environment: one step = one hour of plant operation under
// a (DO, dosage) action pair. Owns the plant state, the rolling history the
// agents observe, and the Monte-Carlo normalization sampling.

#include <cstdint>
#include <deque>
#include <vector>

#include "wwtp/impacts.hpp"
#include "wwtp/influent.hpp"
#include "wwtp/plant.hpp"

namespace wwtp::env {

// One completed control interval as seen by the agents.
struct IntervalRecord {
    influent::InfluentRecord inf;  // influent at interval start
    plant::Action action;          // action in force during the interval
};

struct EnvConfig {
    influent::InfluentConfig influent;
    plant::PlantParams plant;
    impacts::EmissionFactors factors;
    impacts::CostFactors costs;
    double dt_control_d = 1.0 / 24.0;
    plant::Action warmup_action;  // defaults to the baseline set-points
    double warmup_days = 20.0;
    int history_len = 5;

    void validate() const;
};

struct StepOutcome {
    plant::StepFluxes fluxes;
    impacts::ImpactVector impact;
    influent::InfluentRecord inf;  // record the interval ran under
};

class ControlEnv {
public:
    explicit ControlEnv(EnvConfig cfg);

    // Warm-up from the seed state under the warm-up action; fills the
    // observation history. Deterministic.
    void reset();

    StepOutcome step(const plant::Action& action);

    double time_d() const { return t_; }
    const std::deque<IntervalRecord>& history() const { return history_; }
    const plant::Action& prev_action() const { return prev_action_; }
    const plant::PlantState& plant_state() const { return state_; }
    const EnvConfig& config() const { return cfg_; }
    bool warmed_up() const { return warmed_; }
    double warmup_max_rel_change() const { return warmup_rel_change_; }

    struct Snapshot {
        plant::PlantState state;
        std::vector<IntervalRecord> history;
        plant::Action prev_action;
        double t = 0.0;
    };
    Snapshot snapshot() const;
    void restore(const Snapshot& s);

private:
    EnvConfig cfg_;
    plant::PlantState state_;
    std::deque<IntervalRecord> history_;
    plant::Action prev_action_;
    double t_ = 0.0;
    bool warmed_ = false;
    double warmup_rel_change_ = 0.0;
};

struct BoundsSample {
    impacts::NormalizationBounds bounds;
    std::vector<ControlEnv::Snapshot> starts;  // thinned state snapshots
};

// Runs the environment for n control intervals with actions drawn uniformly
// from the action box, recording each indicator; returns elementwise min/max
// plus periodic state snapshots usable as training start points.
// Deterministic given the seed. The environment is reset first.
BoundsSample sample_normalization_bounds(ControlEnv& env, int n, std::uint64_t seed,
                                         int snapshot_stride = 50);

}  // namespace wwtp::env
