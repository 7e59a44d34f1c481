#pragma once

// Deterministic dynamic influent: a double-peak diurnal pattern on flow and
// pollutant concentrations, 24 h periodic, used for warm-up, normalization
// sampling, training and evaluation.

#include <vector>

namespace wwtp::influent {

struct InfluentConfig {
    double mean_flow = 2000.0;        // m3/d
    double flow_amplitude = 0.3;      // fraction of mean, [0, 0.9]
    double peak_hour_morning = 8.0;   // hour of day
    double peak_hour_evening = 19.0;  // hour of day
    double peak_width_h = 4.0;        // half-width of each raised-cosine bump, h
    double mean_cod = 400.0;          // g/m3
    double mean_tn = 40.0;            // g/m3
    double mean_nh3n = 25.0;          // g/m3
    double mean_tp = 6.0;             // g/m3
    double concentration_amplitude = 0.2;  // fraction, [0, 0.9]
    double dilution_coupling = 0.5;        // >= 0, damps concentrations at high flow

    void validate() const;  // throws std::invalid_argument on bad values
};

struct InfluentRecord {
    double t = 0.0;     // days since simulation start
    double q = 0.0;     // m3/d
    double cod = 0.0;   // g/m3
    double tn = 0.0;    // g/m3
    double nh3n = 0.0;  // g/m3
    double tp = 0.0;    // g/m3
};

// Zero-daily-mean diurnal shape, scaled so the peaks reach +1.
double diurnal_shape(const InfluentConfig& cfg, double t_days);

InfluentRecord generate_influent(const InfluentConfig& cfg, double t_days);

// Records at t = 0, dt, 2*dt, ... < horizon. Throws on dt > horizon or
// non-positive arguments.
std::vector<InfluentRecord> influent_series(const InfluentConfig& cfg,
                                            double horizon_days, double dt_days);

// Min/max of flow and of each concentration over one period, used for fixed
// observation scaling.
struct InfluentEnvelope {
    double q_min, q_max;
    double cod_min, cod_max;
    double tn_min, tn_max;
    double nh3n_min, nh3n_max;
    double tp_min, tp_max;
};
InfluentEnvelope influent_envelope(const InfluentConfig& cfg);

}  // namespace wwtp::influent
