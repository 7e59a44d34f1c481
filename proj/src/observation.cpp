#include "wwtp/observation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wwtp/plant.hpp"

namespace wwtp::marl {

namespace {
double scaled(double v, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return (v - lo) / (hi - lo);
}
}  // namespace

ObsScaler ObsScaler::from(const influent::InfluentConfig& cfg) {
    return {influent::influent_envelope(cfg)};
}

std::vector<double> build_observation(std::span<const env::IntervalRecord> history,
                                      AgentId agent, const ObsScaler& s) {
    if (history.size() != static_cast<std::size_t>(kHistoryLen))
        throw std::invalid_argument("build_observation: history must have 5 intervals");

    std::vector<double> obs;
    obs.reserve(kObsSize);
    const auto& e = s.envelope;
    for (const auto& rec : history) {
        obs.push_back(scaled(rec.inf.cod, e.cod_min, e.cod_max));
        obs.push_back(scaled(rec.inf.tn, e.tn_min, e.tn_max));
        obs.push_back(scaled(rec.inf.tp, e.tp_min, e.tp_max));
        obs.push_back(scaled(rec.inf.nh3n, e.nh3n_min, e.nh3n_max));
        obs.push_back(scaled(rec.inf.q, e.q_min, e.q_max));
        const double hour = std::fmod(rec.inf.t, 1.0) * 24.0;
        const double angle = 2.0 * std::numbers::pi * hour / 24.0;
        obs.push_back(std::sin(angle));
        obs.push_back(std::cos(angle));
        if (agent == AgentId::Do) {
            obs.push_back(scaled(rec.action.do_setpoint, plant::Action::kDoMin,
                                 plant::Action::kDoMax));
        } else {
            obs.push_back(scaled(rec.action.pac_dose, plant::Action::kDoseMin,
                                 plant::Action::kDoseMax));
        }
    }
    return obs;
}

}  // namespace wwtp::marl
