#include "wwtp/maddpg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wwtp/plant.hpp"

namespace wwtp::marl {

namespace {

// Saturation guard for the squashed actor head: no effect while the output
// preactivation stays inside +-kSatKnee.
constexpr double kSatKnee = 2.0;
constexpr double kSatPull = 0.02;

std::vector<int> net_sizes(int in, const std::vector<int>& hidden, int out) {
    std::vector<int> sizes;
    sizes.reserve(hidden.size() + 2);
    sizes.push_back(in);
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(out);
    return sizes;
}

// Critic input: both observations followed by both normalized actions.
void fill_critic_input(std::vector<double>& x, const std::vector<double>& o1,
                       const std::vector<double>& o2, double a1, double a2) {
    x.clear();
    x.reserve(o1.size() + o2.size() + 2);
    x.insert(x.end(), o1.begin(), o1.end());
    x.insert(x.end(), o2.begin(), o2.end());
    x.push_back(a1);
    x.push_back(a2);
}

}  // namespace

void TrainConfig::validate() const {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("train: gamma outside [0,1]");
    if (tau <= 0.0 || tau > 1.0) throw std::invalid_argument("train: tau outside (0,1]");
    if (batch_size < 1 || buffer_capacity < batch_size)
        throw std::invalid_argument("train: need batch_size >= 1 and <= buffer capacity");
    if (total_steps < 1) throw std::invalid_argument("train: total_steps must be >= 1");
    if (obs_history != kHistoryLen)
        throw std::invalid_argument("train: obs_history must be 5");
    if (epoch_intervals < 1) throw std::invalid_argument("train: epoch_intervals must be >= 1");
    if (bounds_samples < 2) throw std::invalid_argument("train: bounds_samples must be >= 2");
    if (noise_sigma0_frac < 0.0) throw std::invalid_argument("train: noise sigma must be >= 0");
}

Agents make_agents(const TrainConfig& tc, std::mt19937_64& rng) {
    const int critic_in = 2 * kObsSize + 2;
    Agents agents;
    const double lo[2] = {plant::Action::kDoMin, plant::Action::kDoseMin};
    const double hi[2] = {plant::Action::kDoMax, plant::Action::kDoseMax};
    for (int i = 0; i < 2; ++i) {
        AgentNets& a = agents[i];
        a.action_lo = lo[i];
        a.action_hi = hi[i];
        a.actor = Mlp(net_sizes(kObsSize, tc.hidden, 1), OutputHead::SquashToBox, lo[i], hi[i]);
        a.critic = Mlp(net_sizes(critic_in, tc.hidden, 1), OutputHead::Identity);
        a.actor.init_random(rng);
        a.critic.init_random(rng);
        // Spread the initial policies over the whole action box instead of
        // clustering at the tanh midpoint; each seed starts from a different
        // naive set-point.
        {
            std::uniform_real_distribution<double> u(-1.5, 1.5);
            const int out_layer = a.actor.num_layers() - 1;
            for (double& b : a.actor.biases(out_layer)) b = u(rng);
        }
        a.target_actor = a.actor;
        a.target_critic = a.critic;
        a.actor_opt = Adam(a.actor.param_count(), tc.actor_lr);
        a.critic_opt = Adam(a.critic.param_count(), tc.critic_lr);
        a.noise_sigma = tc.noise_sigma0_frac * (hi[i] - lo[i]);
    }
    return agents;
}

double act(const AgentNets& agent, std::span<const double> obs, bool explore,
           std::mt19937_64& rng) {
    double a = agent.actor.forward(obs)[0];
    if (explore && agent.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, agent.noise_sigma);
        a += noise(rng);
    }
    return std::clamp(a, agent.action_lo, agent.action_hi);
}

std::vector<double> td_targets(const Batch& batch, const Agents& agents, int agent_index,
                               double gamma) {
    if (batch.empty()) throw std::invalid_argument("td_targets: empty batch");
    const AgentNets& agent = agents[agent_index];
    std::vector<double> y(batch.size());
    std::vector<double> x;
    Mlp::Cache cache, actor_cache;
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const Transition& tr = *batch[j];
        agents[0].target_actor.forward(tr.next_obs1, actor_cache);
        const double a1 = agents[0].normalize_action(actor_cache.output[0]);
        agents[1].target_actor.forward(tr.next_obs2, actor_cache);
        const double a2 = agents[1].normalize_action(actor_cache.output[0]);
        fill_critic_input(x, tr.next_obs1, tr.next_obs2, a1, a2);
        agent.target_critic.forward(x, cache);
        y[j] = tr.reward + gamma * cache.output[0];
    }
    return y;
}

double update_critic(AgentNets& agent, const Batch& batch,
                     std::span<const double> targets) {
    if (batch.empty()) throw std::invalid_argument("update_critic: empty batch");
    if (targets.size() != batch.size())
        throw std::invalid_argument("update_critic: targets size mismatch");

    const double n = static_cast<double>(batch.size());
    std::vector<double> grad(agent.critic.param_count(), 0.0);
    std::vector<double> x;
    Mlp::Cache cache;
    double loss = 0.0;
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const Transition& tr = *batch[j];
        fill_critic_input(x, tr.obs1, tr.obs2, tr.a1, tr.a2);
        agent.critic.forward(x, cache);
        const double err = cache.output[0] - targets[j];
        loss += err * err / n;
        const double upstream[1] = {2.0 * err / n};
        agent.critic.backward(cache, upstream, grad, {});
    }
    if (!std::isfinite(loss))
        throw std::runtime_error("update_critic: non-finite loss (batch of " +
                                 std::to_string(batch.size()) + ", q per sample diverged)");
    agent.critic_opt.step(agent.critic.params(), grad);
    return loss;
}

double update_actor_from_q(AgentNets& agent,
                           std::span<const std::vector<double>* const> obs_batch,
                           const std::function<std::pair<double, double>(std::size_t, double)>& q_fn) {
    if (obs_batch.empty()) throw std::invalid_argument("update_actor: empty batch");
    const double n = static_cast<double>(obs_batch.size());
    const double range = agent.action_hi - agent.action_lo;

    std::vector<double> grad(agent.actor.param_count(), 0.0);
    Mlp::Cache cache;
    double mean_q = 0.0;
    for (std::size_t j = 0; j < obs_batch.size(); ++j) {
        agent.actor.forward(*obs_batch[j], cache);
        const double a_norm = agent.normalize_action(cache.output[0]);
        const auto [q, dq_da] = q_fn(j, a_norm);
        mean_q += q / n;
        // Ascend J through the squashing head. A deeply saturated tanh is an
        // absorbing state for gradient ascent, so outside |z| <= kSatKnee the
        // preactivation is pulled back toward the live range.
        const double z = cache.preacts.back()[0];
        const double th = std::tanh(z);
        const double head = 0.5 * (1.0 - th * th) * (agent.action_hi - agent.action_lo);
        double dz = -dq_da / range / n * head;
        if (std::abs(z) > kSatKnee)
            dz += kSatPull * (z > 0.0 ? z - kSatKnee : z + kSatKnee) / n;
        const double dz_arr[1] = {dz};
        agent.actor.backward_preact(cache, dz_arr, grad, {});
    }
    if (!std::isfinite(mean_q))
        throw std::runtime_error("update_actor: non-finite objective");
    for (double g : grad)
        if (!std::isfinite(g)) throw std::runtime_error("update_actor: non-finite gradient");
    agent.actor_opt.step(agent.actor.params(), grad);
    return mean_q;
}

double update_actor(AgentNets& agent, int agent_index, const Batch& batch,
                    [[maybe_unused]] const Agents& agents) {
    // Other agents' actions come from the batch, so only `agent`'s own critic
    // and actor enter the computation.
    std::vector<const std::vector<double>*> obs_batch(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j)
        obs_batch[j] = agent_index == 0 ? &batch[j]->obs1 : &batch[j]->obs2;

    std::vector<double> x;
    Mlp::Cache critic_cache;
    std::vector<double> dx(agent.critic.input_size());
    // Scratch for the critic's parameter gradients, which are discarded here;
    // only the input gradient matters for the policy update.
    std::vector<double> scratch_grad(agent.critic.param_count(), 0.0);
    const std::size_t a_pos = 2 * kObsSize + agent_index;

    auto q_fn = [&](std::size_t j, double a_norm) {
        const Transition& tr = *batch[j];
        const double a1 = agent_index == 0 ? a_norm : tr.a1;
        const double a2 = agent_index == 1 ? a_norm : tr.a2;
        fill_critic_input(x, tr.obs1, tr.obs2, a1, a2);
        agent.critic.forward(x, critic_cache);
        const double upstream[1] = {1.0};
        agent.critic.backward(critic_cache, upstream, scratch_grad, dx);
        return std::make_pair(critic_cache.output[0], dx[a_pos]);
    };
    return update_actor_from_q(agent, obs_batch, q_fn);
}

TrainResult train(env::ControlEnv& environment, const impacts::RewardConfig& rc,
                  const TrainConfig& tc) {
    tc.validate();
    rc.validate();

    // Independent, deterministically derived random streams.
    std::mt19937_64 master(tc.seed);
    const std::uint64_t bounds_seed = master();
    const std::uint64_t init_seed = master();
    const std::uint64_t noise_seed = master();
    const std::uint64_t buffer_seed = master();
    const std::uint64_t start_seed = master();

    // Step 0: normalization bounds from Monte-Carlo sampling, initial state
    // randomly chosen from the sample points.
    env::BoundsSample sample = env::sample_normalization_bounds(
        environment, tc.bounds_samples, bounds_seed, tc.start_snapshot_stride);

    std::mt19937_64 start_rng(start_seed);
    std::uniform_int_distribution<std::size_t> pick_start(0, sample.starts.size() - 1);
    const std::size_t start_index = pick_start(start_rng);
    environment.restore(sample.starts[start_index]);

    std::mt19937_64 init_rng(init_seed);
    Agents agents = make_agents(tc, init_rng);
    std::mt19937_64 noise_rng(noise_seed);
    std::mt19937_64 buffer_rng(buffer_seed);

    ReplayBuffer buffer(tc.buffer_capacity);
    const ObsScaler scaler = ObsScaler::from(environment.config().influent);

    auto observe = [&](AgentId id) {
        const auto& h = environment.history();
        std::vector<env::IntervalRecord> window(h.end() - kHistoryLen, h.end());
        return build_observation(window, id, scaler);
    };

    TrainResult result;
    result.bounds = sample.bounds;
    result.start_snapshot_index = start_index;
    result.log.reserve(tc.total_steps);

    std::vector<double> obs1 = observe(AgentId::Do);
    std::vector<double> obs2 = observe(AgentId::Dose);

    for (int step_i = 1; step_i <= tc.total_steps; ++step_i) {
        // Step 1: interaction.
        plant::Action action;
        action.do_setpoint = act(agents[0], obs1, true, noise_rng);
        action.pac_dose = act(agents[1], obs2, true, noise_rng);

        const plant::Action prev = environment.prev_action();
        const env::StepOutcome outcome = environment.step(action);
        const double penalty =
            impacts::constraint_penalty(outcome.fluxes.effluent, rc.standard, action, prev, rc);
        const double r = impacts::reward(outcome.impact, result.bounds, penalty, rc);

        std::vector<double> next_obs1 = observe(AgentId::Do);
        std::vector<double> next_obs2 = observe(AgentId::Dose);

        Transition tr;
        tr.obs1 = obs1;
        tr.obs2 = obs2;
        tr.a1 = agents[0].normalize_action(action.do_setpoint);
        tr.a2 = agents[1].normalize_action(action.pac_dose);
        tr.reward = r;
        tr.next_obs1 = next_obs1;
        tr.next_obs2 = next_obs2;
        buffer.push(std::move(tr));

        // Step 2: network training once a full batch is available.
        double closs[2] = {0.0, 0.0};
        for (int i = 0; i < 2; ++i) {
            const Batch batch = buffer.sample(tc.batch_size, buffer_rng);
            if (batch.empty()) break;
            const std::vector<double> targets = td_targets(batch, agents, i, tc.gamma);
            closs[i] = update_critic(agents[i], batch, targets);
            update_actor(agents[i], i, batch, agents);
        }
        for (int i = 0; i < 2; ++i) {
            soft_update(agents[i].target_actor, agents[i].actor, tc.tau);
            soft_update(agents[i].target_critic, agents[i].critic, tc.tau);
        }
        if (step_i % tc.epoch_intervals == 0) {
            for (auto& a : agents) a.noise_sigma *= 1.0 - tc.noise_decay_per_epoch;
        }

        TrainLogRow row;
        row.step = step_i;
        row.reward = r;
        row.do_setpoint = action.do_setpoint;
        row.dose = action.pac_dose;
        row.critic_loss_1 = closs[0];
        row.critic_loss_2 = closs[1];
        row.energy = outcome.impact.energy_total;
        row.ep = outcome.impact.ep_total;
        row.ghg = outcome.impact.ghg_total;
        row.cost = outcome.impact.cost_total;
        row.violation =
            impacts::check_standard(outcome.fluxes.effluent, rc.standard).all_ok() ? 0 : 1;
        result.log.push_back(row);

        obs1 = std::move(next_obs1);
        obs2 = std::move(next_obs2);
    }

    result.agents = std::move(agents);
    return result;
}

}  // namespace wwtp::marl
