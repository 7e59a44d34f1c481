#pragma once

// Two-agent MADDPG: decentralized actors (one for the DO set-point, one for
// the dosage), centralized critics over both observations and both actions,
// Gaussian exploration with per-epoch decay, soft target updates, and the
// interaction/training loop.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "wwtp/env.hpp"
#include "wwtp/impacts.hpp"
#include "wwtp/mlp.hpp"
#include "wwtp/observation.hpp"
#include "wwtp/replay_buffer.hpp"

namespace wwtp::marl {

struct TrainConfig {
    double gamma = 0.95;
    double tau = 0.01;
    int batch_size = 256;
    int total_steps = 5000;
    int buffer_capacity = 1000;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double noise_sigma0_frac = 0.2;         // of each action range
    double noise_decay_per_epoch = 0.0002;  // sigma *= 1 - this, per epoch
    int epoch_intervals = 24;               // one simulated day of control steps
    int obs_history = 5;
    std::vector<int> hidden = {64, 64};
    std::uint64_t seed = 1;
    int bounds_samples = 10000;
    int start_snapshot_stride = 50;

    void validate() const;
};

struct AgentNets {
    Mlp actor, critic, target_actor, target_critic;
    Adam actor_opt, critic_opt;
    double noise_sigma = 0.0;  // physical units of this agent's action
    double action_lo = 0.0, action_hi = 1.0;

    double normalize_action(double a) const { return (a - action_lo) / (action_hi - action_lo); }
};

using Agents = std::array<AgentNets, 2>;

// Freshly initialized agent pair (weights from rng, targets copied).
Agents make_agents(const TrainConfig& tc, std::mt19937_64& rng);

// Deterministic actor output, optionally with exploration noise, clipped to
// the agent's action interval.
double act(const AgentNets& agent, std::span<const double> obs, bool explore,
           std::mt19937_64& rng);

using Batch = std::vector<const Transition*>;

// TD targets y^j = r^j + gamma * Q'_i(o', mu'_1(o'_1), mu'_2(o'_2)) for agent i.
std::vector<double> td_targets(const Batch& batch, const Agents& agents, int agent_index,
                               double gamma);

// One Adam step on the critic against the targets; returns the pre-update
// mean squared error. Throws std::runtime_error on a non-finite loss.
double update_critic(AgentNets& agent, const Batch& batch,
                     std::span<const double> targets);

// One ascent step on the actor through the centralized critic, other agents'
// actions taken from the batch; returns the pre-update mean Q.
double update_actor(AgentNets& agent, int agent_index, const Batch& batch,
                    const Agents& agents);

// Internals of the deterministic policy gradient, parameterized over the
// critic evaluation so the ascent math is testable against analytic critics.
// q_fn(sample, a_norm) returns {Q, dQ/da_norm}.
double update_actor_from_q(AgentNets& agent,
                           std::span<const std::vector<double>* const> obs_batch,
                           const std::function<std::pair<double, double>(std::size_t, double)>& q_fn);

struct TrainLogRow {
    int step = 0;
    double reward = 0.0;
    double do_setpoint = 0.0;
    double dose = 0.0;
    double critic_loss_1 = 0.0;
    double critic_loss_2 = 0.0;
    double energy = 0.0;  // kWh/m3 for the interval
    double ep = 0.0;
    double ghg = 0.0;
    double cost = 0.0;
    int violation = 0;
};

struct TrainResult {
    Agents agents;
    std::vector<TrainLogRow> log;
    impacts::NormalizationBounds bounds;
    std::size_t start_snapshot_index = 0;
};

// Step 0-3 loop: sample normalization bounds, pick a start state from the
// sample points, then run exactly total_steps interactions with one critic
// and one actor update per agent per step once the buffer holds a batch.
// Fully deterministic for a given seed.
TrainResult train(env::ControlEnv& environment, const impacts::RewardConfig& rc,
                  const TrainConfig& tc);

}  // namespace wwtp::marl
