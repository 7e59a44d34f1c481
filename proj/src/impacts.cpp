#include "wwtp/impacts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wwtp::impacts {

namespace {
constexpr double kN2oPerN = 44.0 / 28.0;

double per_m3(double load, double volume) { return volume > 0.0 ? load / volume : 0.0; }
}  // namespace

void EmissionFactors::validate() const {
    const double values[] = {ep_tp,      ep_cod,        ep_nh4,  ep_no3,
                             ep_no2,     ghg_electricity, ghg_fecl3, ghg_pac,
                             ghg_transport, transport_distance_km, gwp_n2o, gwp_ch4,
                             ipcc_bo,    ipcc_mcf,      ipcc_ef, chem_energy_fecl3_40,
                             chem_energy_pac_25};
    for (double v : values)
        if (!(v > 0.0)) throw std::invalid_argument("impacts: emission factors must be > 0");
}

void CostFactors::validate() const {
    const double values[] = {electricity, fecl3,    pac,  transport,
                             distance_km, landfill, misc, biogas_subsidy};
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("impacts: cost factors must be >= 0");
}

DischargeStandard grade_ia() { return {"grade-ia", 50.0, 5.0, 15.0, 0.5}; }
DischargeStandard grade_ib() { return {"grade-ib", 60.0, 8.0, 20.0, 1.0}; }
DischargeStandard quasi_sw_iv() { return {"quasi-sw-iv", 30.0, 1.5, 15.0, 0.3}; }

DischargeStandard standard_by_name(const std::string& name) {
    if (name == "grade-ia") return grade_ia();
    if (name == "grade-ib") return grade_ib();
    if (name == "quasi-sw-iv") return quasi_sw_iv();
    throw std::invalid_argument("unknown discharge standard: " + name);
}

EpBreakdown ep_components(const EpInputs& loads, const EmissionFactors& f) {
    const double values[] = {loads.tp, loads.cod, loads.nh4, loads.no3, loads.no2};
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("eutrophication_potential: negative load");
    EpBreakdown b;
    b.tp = f.ep_tp * loads.tp;
    b.cod = f.ep_cod * loads.cod;
    b.nh4 = f.ep_nh4 * loads.nh4;
    b.no3 = f.ep_no3 * loads.no3;
    b.no2 = f.ep_no2 * loads.no2;
    return b;
}

double eutrophication_potential(const EpInputs& loads, const EmissionFactors& f) {
    return ep_components(loads, f).total();
}

EffluentGhg effluent_ghg(double bod_kg, double tn_kg, const EmissionFactors& f) {
    if (bod_kg < 0.0 || tn_kg < 0.0)
        throw std::invalid_argument("effluent_ghg: negative input");
    EffluentGhg g;
    g.ch4 = bod_kg * f.ipcc_bo * f.ipcc_mcf;
    g.n2o = tn_kg * f.ipcc_ef * kN2oPerN;
    return g;
}

EnergyBreakdown total_energy(const plant::StepFluxes& fx, const EmissionFactors& f) {
    const double v = fx.treated_volume;
    EnergyBreakdown e;
    e.aeration = per_m3(fx.aeration_energy_kwh, v);
    e.pumps = per_m3(fx.pump_energy_kwh, v);
    // Embodied energy is charged on the solution mass actually handled.
    const double fecl3_solution = fx.fecl3_used_kg / 0.40;
    const double pac_solution = fx.pac_pure_used_kg / 0.25;
    e.chemicals = per_m3(fecl3_solution * f.chem_energy_fecl3_40 +
                             pac_solution * f.chem_energy_pac_25,
                         v);
    e.other = per_m3(fx.other_energy_kwh, v);
    e.biogas = per_m3(fx.biogas_electricity_kwh, v);
    return e;
}

CostBreakdown life_cycle_cost(const plant::StepFluxes& fx, const CostFactors& c) {
    const double v = fx.treated_volume;
    CostBreakdown b;
    const double direct_kwh = fx.aeration_energy_kwh + fx.pump_energy_kwh + fx.other_energy_kwh;
    b.energy = per_m3(direct_kwh * c.electricity, v);
    b.chemicals = per_m3(fx.pac_pure_used_kg * c.pac + fx.fecl3_used_kg * c.fecl3, v);
    const double transported = fx.fecl3_used_kg + fx.pac_pure_used_kg + fx.cake_mass_kg;
    b.transport = per_m3(transported * c.distance_km * c.transport, v);
    b.landfill = per_m3(fx.cake_mass_kg * c.landfill, v);
    b.misc = c.misc;
    b.biogas = per_m3(fx.biogas_electricity_kwh * c.biogas_subsidy, v);
    return b;
}

GhgBreakdown total_ghg(const plant::StepFluxes& fx, const EmissionFactors& f) {
    const double v = fx.treated_volume;
    GhgBreakdown g;
    const EffluentGhg eff = effluent_ghg(fx.eff_bod_kg, fx.eff_tn_kg, f);
    g.process = per_m3(f.gwp_n2o * (fx.process_n2o_kg + eff.n2o) +
                           f.gwp_ch4 * (fx.process_ch4_kg + eff.ch4),
                       v);
    const double direct_kwh = fx.aeration_energy_kwh + fx.pump_energy_kwh + fx.other_energy_kwh;
    g.energy = per_m3(direct_kwh * f.ghg_electricity, v);
    const double transported = fx.fecl3_used_kg + fx.pac_pure_used_kg + fx.cake_mass_kg;
    g.material = per_m3(fx.fecl3_used_kg * f.ghg_fecl3 + fx.pac_pure_used_kg * f.ghg_pac +
                            transported * f.transport_distance_km * f.ghg_transport,
                        v);
    g.biogas = per_m3(fx.biogas_electricity_kwh * f.ghg_electricity, v);
    return g;
}

ImpactVector assess(const plant::StepFluxes& fx, const EmissionFactors& f,
                    const CostFactors& c) {
    if (fx.treated_volume <= 0.0) {
        const double loads[] = {fx.eff_cod_kg, fx.eff_tn_kg, fx.eff_tp_kg,
                                fx.aeration_energy_kwh, fx.cake_mass_kg};
        for (double x : loads)
            if (x > 0.0)
                throw std::invalid_argument("assess: nonzero fluxes with zero treated volume");
    }
    ImpactVector iv;
    iv.energy = total_energy(fx, f);
    iv.cost = life_cycle_cost(fx, c);
    EpInputs ep;
    const double v = fx.treated_volume;
    ep.tp = per_m3(fx.eff_tp_kg, v);
    ep.cod = per_m3(fx.eff_cod_kg, v);
    ep.nh4 = per_m3(fx.eff_nh4_kg, v);
    ep.no3 = per_m3(fx.eff_no3_kg, v);
    ep.no2 = per_m3(fx.eff_no2_kg, v);
    iv.ep = ep_components(ep, f);
    iv.ghg = total_ghg(fx, f);
    iv.energy_total = iv.energy.total();
    iv.cost_total = iv.cost.total();
    iv.ep_total = iv.ep.total();
    iv.ghg_total = iv.ghg.total();
    return iv;
}

double normalize(double x, const Range& r) {
    if (!r.set) throw std::invalid_argument("normalize: bounds not set");
    if (r.max < r.min) throw std::invalid_argument("normalize: max < min");
    if (r.max == r.min) return 0.0;
    return std::clamp((x - r.min) / (r.max - r.min), 0.0, 1.0);
}

void RewardConfig::validate() const {
    if (w_energy < 0.0 || w_ep < 0.0 || w_ghg < 0.0)
        throw std::invalid_argument("reward: weights must be >= 0");
    if (std::abs(w_energy + w_ep + w_ghg - 1.0) > 1e-6)
        throw std::invalid_argument("reward: weights must sum to 1");
    if (lambda_smooth < 0.0 || lambda_mag < 0.0 || violation_penalty < 0.0)
        throw std::invalid_argument("reward: penalty coefficients must be >= 0");
}

LcaWeights lca_weights_from_coefficients(double c_energy, double c_ghg, double c_ep) {
    const double sum = c_energy + c_ghg + c_ep;
    if (!(sum > 0.0)) throw std::invalid_argument("weights: coefficients must sum > 0");
    return {c_energy / sum, c_ghg / sum, c_ep / sum};
}

Compliance check_standard(const plant::EffluentQuality& eff, const DischargeStandard& std_) {
    Compliance c;
    c.cod_ok = eff.cod <= std_.cod;
    c.nh3n_ok = eff.nh4n <= std_.nh3n;
    c.tn_ok = eff.tn <= std_.tn;
    c.tp_ok = eff.tp <= std_.tp;
    return c;
}

namespace {
double action_norm(double v, double lo, double hi) { return (v - lo) / (hi - lo); }
}  // namespace

double constraint_penalty(const plant::EffluentQuality& eff, const DischargeStandard& std_,
                          const plant::Action& a, const plant::Action& a_prev,
                          const RewardConfig& rc) {
    const Compliance c = check_standard(eff, std_);
    double penalty = c.all_ok() ? 0.0 : rc.violation_penalty;

    const double do_n = action_norm(a.do_setpoint, plant::Action::kDoMin, plant::Action::kDoMax);
    const double do_p =
        action_norm(a_prev.do_setpoint, plant::Action::kDoMin, plant::Action::kDoMax);
    const double dose_n =
        action_norm(a.pac_dose, plant::Action::kDoseMin, plant::Action::kDoseMax);
    const double dose_p =
        action_norm(a_prev.pac_dose, plant::Action::kDoseMin, plant::Action::kDoseMax);

    penalty += rc.lambda_smooth * (std::abs(do_n - do_p) + std::abs(dose_n - dose_p));
    penalty += rc.lambda_mag * (do_n + dose_n);
    return penalty;
}

double reward(const ImpactVector& iv, const NormalizationBounds& b, double penalty,
              const RewardConfig& rc) {
    if (rc.mode == RewardMode::Cost)
        return -(normalize(iv.cost_total, b.cost) + penalty);
    const double e = normalize(iv.energy_total, b.energy);
    const double ep = normalize(iv.ep_total, b.ep);
    const double ghg = normalize(iv.ghg_total, b.ghg);
    return -(rc.w_energy * e + rc.w_ep * ep + rc.w_ghg * ghg + penalty);
}

}  // namespace wwtp::impacts
