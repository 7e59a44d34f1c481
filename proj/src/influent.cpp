#include "wwtp/influent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wwtp::influent {

namespace {

constexpr double kPi = std::numbers::pi;

// Raised-cosine bump of unit height centred on `center` (hours), half-width
// w hours, wrapped on the 24 h day.
double bump(double hour, double center, double w) {
    double d = std::fmod(hour - center, 24.0);
    if (d < -12.0) d += 24.0;
    if (d > 12.0) d -= 24.0;
    if (std::abs(d) >= w) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * d / w));
}

// Shape before mean removal and scaling.
double raw_shape(const InfluentConfig& cfg, double hour) {
    return bump(hour, cfg.peak_hour_morning, cfg.peak_width_h) +
           bump(hour, cfg.peak_hour_evening, cfg.peak_width_h);
}

double concentration(double mean, double p, const InfluentConfig& cfg) {
    const double boost = 1.0 + cfg.concentration_amplitude * p;
    const double dilution = 1.0 + cfg.dilution_coupling * cfg.flow_amplitude * p;
    return mean * boost / dilution;
}

}  // namespace

void InfluentConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("influent: ") + name + " must be > 0");
    };
    positive(mean_flow, "mean_flow");
    positive(mean_cod, "mean_cod");
    positive(mean_tn, "mean_tn");
    positive(mean_nh3n, "mean_nh3n");
    positive(mean_tp, "mean_tp");
    positive(peak_width_h, "peak_width_h");
    if (flow_amplitude < 0.0 || flow_amplitude > 0.9)
        throw std::invalid_argument("influent: flow_amplitude outside [0, 0.9]");
    if (concentration_amplitude < 0.0 || concentration_amplitude > 0.9)
        throw std::invalid_argument("influent: concentration_amplitude outside [0, 0.9]");
    if (dilution_coupling < 0.0)
        throw std::invalid_argument("influent: dilution_coupling must be >= 0");
    if (mean_nh3n > mean_tn)
        throw std::invalid_argument("influent: mean_nh3n exceeds mean_tn");
}

double diurnal_shape(const InfluentConfig& cfg, double t_days) {
    const double hour = std::fmod(t_days, 1.0) * 24.0;
    // The daily mean of each unit bump is w/24 (integral of the raised cosine
    // over its support equals its half-width).
    const double mean = 2.0 * cfg.peak_width_h / 24.0;
    // Peak value of the summed shape, evaluated at the two centres; exact
    // unless the bumps overlap so much that the max falls between them.
    const double peak = std::max(raw_shape(cfg, cfg.peak_hour_morning),
                                 raw_shape(cfg, cfg.peak_hour_evening));
    return (raw_shape(cfg, hour) - mean) / (peak - mean);
}

InfluentRecord generate_influent(const InfluentConfig& cfg, double t_days) {
    const double p = diurnal_shape(cfg, t_days);
    InfluentRecord r;
    r.t = t_days;
    r.q = cfg.mean_flow * (1.0 + cfg.flow_amplitude * p);
    r.cod = concentration(cfg.mean_cod, p, cfg);
    r.tn = concentration(cfg.mean_tn, p, cfg);
    r.nh3n = concentration(cfg.mean_nh3n, p, cfg);
    r.tp = concentration(cfg.mean_tp, p, cfg);
    return r;
}

std::vector<InfluentRecord> influent_series(const InfluentConfig& cfg,
                                            double horizon_days, double dt_days) {
    if (!(horizon_days > 0.0) || !(dt_days > 0.0))
        throw std::invalid_argument("influent_series: horizon and dt must be > 0");
    if (dt_days > horizon_days)
        throw std::invalid_argument("influent_series: dt exceeds horizon");
    const auto count = static_cast<std::size_t>(std::ceil(horizon_days / dt_days - 1e-12));
    std::vector<InfluentRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(generate_influent(cfg, static_cast<double>(i) * dt_days));
    return out;
}

InfluentEnvelope influent_envelope(const InfluentConfig& cfg) {
    // p ranges over [p_min, 1]; flow is monotone in p, the concentration
    // ratio is monotone in p as well (both numerator and denominator are
    // affine), so extremes occur at the endpoints of p.
    const double mean = 2.0 * cfg.peak_width_h / 24.0;
    const double peak = std::max(raw_shape(cfg, cfg.peak_hour_morning),
                                 raw_shape(cfg, cfg.peak_hour_evening));
    const double p_min = (0.0 - mean) / (peak - mean);
    const double p_max = 1.0;

    InfluentEnvelope e{};
    auto fill = [&](double m, double& lo, double& hi) {
        const double a = concentration(m, p_min, cfg);
        const double b = concentration(m, p_max, cfg);
        lo = std::min(a, b);
        hi = std::max(a, b);
    };
    e.q_min = cfg.mean_flow * (1.0 + cfg.flow_amplitude * p_min);
    e.q_max = cfg.mean_flow * (1.0 + cfg.flow_amplitude * p_max);
    fill(cfg.mean_cod, e.cod_min, e.cod_max);
    fill(cfg.mean_tn, e.tn_min, e.tn_max);
    fill(cfg.mean_nh3n, e.nh3n_min, e.nh3n_max);
    fill(cfg.mean_tp, e.tp_min, e.tp_max);
    return e;
}

}  // namespace wwtp::influent
