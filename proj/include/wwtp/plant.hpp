#pragma once

// Reduced activated-sludge plant surrogate: primary clarifier, four
// biological tanks in series (anaerobic, anoxic 1, anoxic 2, aerobic) in a
// modified-UCT recycle scheme, an ideal secondary clarifier, chemical P
// precipitation in the aerobic tank, and a sludge line with thickening,
// FeCl3 conditioning, digestion with biogas recovery, and dewatering.
//
// State per tank is a 7-component reduced activated-sludge vector. Aerobic
// dissolved oxygen is held exactly at the set-point (ideal controller); the
// oxygen actually transferred is charged to aeration energy through a
// saturation-deficit driving-force model.

#include <array>
#include <cstddef>
#include <string>
#include <utility>

#include "wwtp/influent.hpp"

namespace wwtp::plant {

struct Kinetics {
    double mu_h = 4.0;        // /d, max heterotrophic growth
    double mu_a = 2.4;        // /d, nitrification rate constant (g N per g XA per d)
    double k_s = 20.0;        // g COD/m3
    double k_nh = 3.2;        // g N/m3
    double k_oh = 0.2;        // g O2/m3
    double k_oa = 1.8;        // g O2/m3
    double k_no = 0.5;        // g N/m3
    double y_h = 0.67;        // g COD biomass per g COD substrate
    double y_a = 0.80;        // g COD biomass per g N nitrified; O2 demand is 4.57/y_a per g N
    double b_h = 0.15;        // /d, heterotroph decay
    double b_a = 0.08;        // /d, autotroph decay
    double eta_g = 0.8;       // anoxic growth reduction factor
    double i_n = 0.07;        // g N per g COD biomass
    double i_p = 0.033;       // g P per g COD biomass
    double f_xi_decay = 0.08; // fraction of decayed biomass routed to XI
};

// How raw influent COD/N/P map onto the surrogate state vector.
struct InfluentFractions {
    double f_ss = 0.63;              // soluble biodegradable share of COD
    double f_xi = 0.32;              // particulate inert share of COD
    double f_xh = 0.05;              // particulate heterotroph share of COD
    double ammonifiable_orgn = 0.8;  // share of dissolved organic N released as NH4-N;
                                     // the remainder passes through to effluent TN
};

struct Digester {
    double vs_destruction = 0.45;  // fraction of degradable COD destroyed
    double ch4_yield = 0.35;       // m3 CH4 per kg COD destroyed
    double fugitive_ch4 = 0.02;    // fraction of CH4 volume escaping uncombusted
    double ch4_density = 0.717;    // kg/m3
};

struct Chp {
    double electrical_efficiency = 0.35;
    double ch4_lhv = 10.0;  // kWh per m3 CH4
};

struct PumpParams {
    double h_static = 5.0;    // m
    double h_friction = 1.0;  // m
    double efficiency = 0.7;
};

struct PlantParams {
    // Unit volumes, m3
    double vol_primary = 300.0;
    double vol_anaerobic = 200.0;
    double vol_anoxic1 = 400.0;
    double vol_anoxic2 = 600.0;
    double vol_aerobic = 800.0;
    double vol_clarifier = 600.0;

    double sludge_recycle_ratio = 1.5;      // clarifier underflow return, x influent flow
    double irr_anox1_to_anaerobic = 3.0;    // x influent flow
    double irr_aerobic_to_anox2 = 2.0;      // x influent flow
    double srt_target_d = 15.0;             // +inf disables wastage
    double fecl3_dose_kg_per_kg_tss = 0.030;  // kg FeCl3(100%) per kg TSS conditioned

    Kinetics kin;
    InfluentFractions frac;

    double p_binding = 0.065;            // kg P bound per kg PAC(100%)
    double pac_solution_fraction = 0.25; // PAC dosed as 25% solution
    double fecl3_solution_fraction = 0.40;

    double sae = 1.4;      // kg O2 per kWh at zero DO
    double do_sat = 9.0;   // g O2/m3

    double primary_removal = 0.5;   // particulate fraction removed by primary clarifier
    double effluent_tss = 10.0;     // g TSS/m3 leaving the secondary clarifier
    double tss_per_cod = 0.75;      // g TSS per g particulate COD
    double dewatered_solids = 0.30; // cake dry-solids fraction

    Digester digester;
    Chp chp;
    PumpParams pump;

    double mixing_w_per_m3 = 3.0;   // W per m3 of tankage
    double fixed_other_kw = 13.58;  // kW

    double primary_sludge_tss = 30000.0;  // g/m3
    double thickened_tss = 50000.0;       // g/m3

    // Fraction of nitrified N emitted as N2O-N: base + span * exp(-DO/decay)
    double n2o_frac_base = 0.004;
    double n2o_frac_span = 0.016;
    double n2o_do_decay = 0.5;  // g O2/m3

    double bod_per_cod = 0.5;  // effluent BOD taken as half of effluent COD

    double chem_sludge_per_pac = 1.0;  // kg TSS per kg PAC(100%) dosed
    double chem_sludge_per_p = 3.9;    // kg TSS per kg P precipitated

    double euler_substep_d = 0.0005;

    double total_volume() const {
        return vol_primary + vol_anaerobic + vol_anoxic1 + vol_anoxic2 +
               vol_aerobic + vol_clarifier;
    }
    void validate() const;  // throws std::invalid_argument
};

// 7-component reduced activated-sludge state, g/m3.
struct TankState {
    double ss = 60.0;    // readily biodegradable COD
    double snh = 8.0;    // ammonia N
    double sno = 3.0;    // nitrate N
    double spo = 1.5;    // phosphate P
    double xh = 1480.0;  // heterotrophic biomass COD
    double xa = 158.0;   // autotrophic biomass COD
    double xi = 1320.0;  // particulate inert COD

    static constexpr std::size_t kNumFields = 7;
    double* data() { return &ss; }
    const double* data() const { return &ss; }
    static const char* field_name(std::size_t i);
    double particulate_cod() const { return xh + xa + xi; }
};

struct Action {
    double do_setpoint = 1.5;  // g O2/m3, [0, 5]
    double pac_dose = 0.125;   // kg PAC solution (25%) per m3 treated, [0, 0.5]

    static constexpr double kDoMin = 0.0, kDoMax = 5.0;
    static constexpr double kDoseMin = 0.0, kDoseMax = 0.5;

    Action clipped() const;
};

// Interval-average effluent concentrations, g/m3 (N species as N).
struct EffluentQuality {
    double cod = 0.0;
    double bod = 0.0;
    double nh4n = 0.0;
    double no3n = 0.0;
    double no2n = 0.0;
    double tn = 0.0;
    double tp = 0.0;
};

// Everything one control interval produces, for impact accounting.
// Loads are kg per interval; N species on an N basis.
struct StepFluxes {
    double treated_volume = 0.0;   // m3 influent this interval
    double effluent_volume = 0.0;  // m3

    double eff_cod_kg = 0.0;
    double eff_bod_kg = 0.0;
    double eff_nh4_kg = 0.0;  // kg NH4-N
    double eff_no3_kg = 0.0;  // kg NO3-N
    double eff_no2_kg = 0.0;  // kg NO2-N (zero in this surrogate)
    double eff_tn_kg = 0.0;   // kg N
    double eff_tp_kg = 0.0;   // kg P
    EffluentQuality effluent;

    double our_total_kg = 0.0;  // kg O2 transferred

    double aeration_energy_kwh = 0.0;
    double pump_energy_kwh = 0.0;
    double other_energy_kwh = 0.0;
    double biogas_electricity_kwh = 0.0;

    double fecl3_used_kg = 0.0;     // 100% basis
    double pac_pure_used_kg = 0.0;  // 100% basis
    double cake_mass_kg = 0.0;      // wet

    double process_n2o_kg = 0.0;
    double process_ch4_kg = 0.0;

    // Diagnostics (not part of the impact formulas)
    double n_nitrified_kg = 0.0;
    double p_chem_removed_kg = 0.0;
    double waste_sludge_cod_kg = 0.0;
    double primary_sludge_cod_kg = 0.0;
    double digested_cod_kg = 0.0;  // COD destroyed in the digester (leaves as gas)
    double cake_dry_tss_kg = 0.0;
    double realized_srt_d = 0.0;
    long clamp_events = 0;

    // Everything that left through the sludge line this interval, for mass
    // balances: all COD/N/P routed to primary sludge, wastage and chemical
    // precipitation, minus what the digester gasified (COD only).
    double sludge_out_cod_kg = 0.0;
    double sludge_out_n_kg = 0.0;
    double sludge_out_p_kg = 0.0;
};

enum class Tank { Anaerobic = 0, Anoxic1 = 1, Anoxic2 = 2, Aerobic = 3 };

struct PlantState {
    std::array<TankState, 4> tanks{};
    double blanket_kg = 0.0;        // secondary clarifier sludge blanket (quasi-steady: 0)
    double digester_cod_kg = 0.0;   // digester inventory (instantaneous digestion: 0)
    double elapsed_d = 0.0;
    long clamp_total = 0;
};

// Per-process reaction rates for one tank, g/m3/d.
struct ProcessRates {
    double growth_aerobic = 0.0;   // heterotrophic, COD basis
    double growth_anoxic = 0.0;    // heterotrophic, COD basis
    double nitrification = 0.0;    // N basis (SNH -> SNO)
    double decay_h = 0.0;
    double decay_a = 0.0;
};

ProcessRates process_rates(const TankState& tank, double dissolved_oxygen,
                           const PlantParams& p);

// COD, N and P carried by one cubic metre of mixed liquor (XI carries no
// nutrients in this surrogate).
double tank_cod(const TankState& t);
double tank_n(const TankState& t, const Kinetics& k);
double tank_p(const TankState& t, const Kinetics& k);

// kWh to transfer `our_kg` of oxygen while holding the given DO.
// Throws std::invalid_argument when DO >= do_sat.
double aeration_energy(double our_kg, double dissolved_oxygen, const PlantParams& p);

// Pump power in kW for flow q in m3/s against the static+friction head.
double pump_energy(double q_m3s, const PlantParams& p);

// Model composition of the influent after fractionation (concentrations g/m3).
struct InfluentComposition {
    double ss, snh, sno, spo, xh, xi;
    double inert_soluble_n;  // non-ammonifiable dissolved organic N, to effluent TN
};
InfluentComposition fractionate(const influent::InfluentRecord& inf, const PlantParams& p);

std::pair<PlantState, StepFluxes> step(const PlantState& state,
                                       const influent::InfluentRecord& inf,
                                       const Action& action, double dt_control_d,
                                       const PlantParams& p);

struct WarmupResult {
    PlantState state;
    double max_rel_change = 0.0;  // over the final simulated day
    bool quasi_steady = false;    // max_rel_change < 2%
};

// 20-day constant-action integration from the default seed state.
WarmupResult warmup(const PlantParams& p, const influent::InfluentConfig& cfg,
                    const Action& action, double warmup_days = 20.0,
                    double dt_control_d = 1.0 / 24.0);

}  // namespace wwtp::plant
