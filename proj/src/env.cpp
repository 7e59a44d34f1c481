#include "wwtp/env.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wwtp::env {

void EnvConfig::validate() const {
    influent.validate();
    plant.validate();
    factors.validate();
    costs.validate();
    if (!(dt_control_d > 0.0)) throw std::invalid_argument("env: dt_control must be > 0");
    if (history_len < 1) throw std::invalid_argument("env: history_len must be >= 1");
    if (!(warmup_days > 0.0)) throw std::invalid_argument("env: warmup_days must be > 0");
}

ControlEnv::ControlEnv(EnvConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    prev_action_ = cfg_.warmup_action;
}

void ControlEnv::reset() {
    state_ = plant::PlantState{};
    history_.clear();
    prev_action_ = cfg_.warmup_action;
    t_ = 0.0;

    const int intervals =
        static_cast<int>(std::llround(cfg_.warmup_days / cfg_.dt_control_d));
    const int per_day = static_cast<int>(std::llround(1.0 / cfg_.dt_control_d));
    plant::PlantState day_before = state_;
    for (int i = 0; i < intervals; ++i) {
        if (i == intervals - per_day) day_before = state_;
        step(cfg_.warmup_action);
    }

    double max_rel = 0.0;
    for (std::size_t ti = 0; ti < 4; ++ti) {
        for (std::size_t fi = 0; fi < plant::TankState::kNumFields; ++fi) {
            const double before = day_before.tanks[ti].data()[fi];
            const double after = state_.tanks[ti].data()[fi];
            max_rel = std::max(max_rel,
                               std::abs(after - before) / std::max(std::abs(before), 1e-6));
        }
    }
    warmup_rel_change_ = max_rel;
    warmed_ = true;
}

StepOutcome ControlEnv::step(const plant::Action& action_in) {
    const plant::Action action = action_in.clipped();
    const auto rec = influent::generate_influent(cfg_.influent, t_);
    auto [next, fx] = plant::step(state_, rec, action, cfg_.dt_control_d, cfg_.plant);
    state_ = next;
    t_ += cfg_.dt_control_d;

    history_.push_back({rec, action});
    while (static_cast<int>(history_.size()) > cfg_.history_len) history_.pop_front();
    prev_action_ = action;

    StepOutcome out;
    out.fluxes = fx;
    out.impact = impacts::assess(fx, cfg_.factors, cfg_.costs);
    out.inf = rec;
    return out;
}

ControlEnv::Snapshot ControlEnv::snapshot() const {
    Snapshot s;
    s.state = state_;
    s.history.assign(history_.begin(), history_.end());
    s.prev_action = prev_action_;
    s.t = t_;
    return s;
}

void ControlEnv::restore(const Snapshot& s) {
    state_ = s.state;
    history_.assign(s.history.begin(), s.history.end());
    prev_action_ = s.prev_action;
    t_ = s.t;
    warmed_ = true;
}

BoundsSample sample_normalization_bounds(ControlEnv& env, int n, std::uint64_t seed,
                                         int snapshot_stride) {
    if (n < 2) throw std::invalid_argument("sample_normalization_bounds: n must be >= 2");
    env.reset();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u_do(plant::Action::kDoMin, plant::Action::kDoMax);
    std::uniform_real_distribution<double> u_dose(plant::Action::kDoseMin,
                                                  plant::Action::kDoseMax);

    BoundsSample out;
    auto widen = [](impacts::Range& r, double x) {
        if (!r.set) {
            r.min = r.max = x;
            r.set = true;
        } else {
            r.min = std::min(r.min, x);
            r.max = std::max(r.max, x);
        }
    };

    for (int i = 0; i < n; ++i) {
        plant::Action a;
        a.do_setpoint = u_do(rng);
        a.pac_dose = u_dose(rng);
        const StepOutcome outcome = env.step(a);
        widen(out.bounds.energy, outcome.impact.energy_total);
        widen(out.bounds.cost, outcome.impact.cost_total);
        widen(out.bounds.ep, outcome.impact.ep_total);
        widen(out.bounds.ghg, outcome.impact.ghg_total);
        if (i % snapshot_stride == 0) out.starts.push_back(env.snapshot());
    }
    return out;
}

}  // namespace wwtp::env
