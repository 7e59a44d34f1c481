#pragma once

// The four impact indicators (energy, cost, eutrophication potential, GHG)
// computed from step fluxes, min/max normalization, discharge-standard
// compliance, constraint penalties and the scalarized reward.

#include <string>

#include "wwtp/plant.hpp"

namespace wwtp::impacts {

struct EmissionFactors {
    // Eutrophication, kg PO4-eq per kg discharged (CML 2002 midpoint factors)
    double ep_tp = 3.07;
    double ep_cod = 0.022;
    double ep_nh4 = 0.33;
    double ep_no3 = 0.095;
    double ep_no2 = 0.13;

    // Greenhouse gas, kg CO2-eq per unit
    double ghg_electricity = 1.17;      // per kWh (Chinese grid mix)
    double ghg_fecl3 = 0.986;           // per kg FeCl3(100%)
    double ghg_pac = 1.182;             // per kg PAC(100%)
    double ghg_transport = 0.000192;    // per kg*km, road freight
    double transport_distance_km = 200.0;
    double gwp_n2o = 298.0;             // per kg N2O
    double gwp_ch4 = 25.0;              // per kg CH4

    // IPCC effluent-discharge factors
    double ipcc_bo = 0.25;    // kg CH4 per kg BOD
    double ipcc_mcf = 0.035;  // methane correction factor
    double ipcc_ef = 0.016;   // kg N2O-N per kg N

    // Embodied energy of chemicals, kWh per kg of solution
    double chem_energy_fecl3_40 = 3.4;
    double chem_energy_pac_25 = 1.94;

    void validate() const;
};

struct CostFactors {
    double electricity = 0.8;     // CNY/kWh
    double fecl3 = 1.7;           // CNY/kg FeCl3(100%)
    double pac = 2.5;             // CNY/kg PAC(100%)
    double transport = 0.005;     // CNY/(kg*km)
    double distance_km = 200.0;   // km
    double landfill = 0.52;       // CNY/kg wet sludge
    double biogas_subsidy = 0.25; // CNY/kWh
    double misc = 0.3;            // CNY/m3 treated

    void validate() const;
};

struct DischargeStandard {
    std::string name;
    double cod = 50.0;   // g/m3
    double nh3n = 5.0;   // g/m3
    double tn = 15.0;    // g/m3
    double tp = 0.5;     // g/m3
};

// GB 18918-2002 grade I-A / I-B and the quasi surface-water-IV tightening.
DischargeStandard grade_ia();
DischargeStandard grade_ib();
DischargeStandard quasi_sw_iv();
DischargeStandard standard_by_name(const std::string& name);

struct EnergyBreakdown {
    double aeration = 0.0, pumps = 0.0, chemicals = 0.0, other = 0.0, biogas = 0.0;
    double total() const { return aeration + pumps + chemicals + other - biogas; }
};

struct CostBreakdown {
    double energy = 0.0, chemicals = 0.0, transport = 0.0, landfill = 0.0, misc = 0.0,
           biogas = 0.0;
    double total() const { return energy + chemicals + transport + landfill + misc - biogas; }
};

struct EpBreakdown {
    double tp = 0.0, cod = 0.0, nh4 = 0.0, no3 = 0.0, no2 = 0.0;
    double total() const { return tp + cod + nh4 + no3 + no2; }
};

struct GhgBreakdown {
    double process = 0.0, energy = 0.0, material = 0.0, biogas = 0.0;
    double total() const { return process + energy + material - biogas; }
};

// All indicators per m3 of treated wastewater.
struct ImpactVector {
    EnergyBreakdown energy;   // kWh/m3
    CostBreakdown cost;       // CNY/m3
    EpBreakdown ep;           // kg PO4-eq/m3
    GhgBreakdown ghg;         // kg CO2-eq/m3
    double energy_total = 0.0;
    double cost_total = 0.0;
    double ep_total = 0.0;
    double ghg_total = 0.0;
};

// Effluent loads per m3 treated (kg/m3); N species on the basis the caller
// uses (this artifact reports them as N).
struct EpInputs {
    double tp = 0.0, cod = 0.0, nh4 = 0.0, no3 = 0.0, no2 = 0.0;
};

double eutrophication_potential(const EpInputs& loads, const EmissionFactors& f);
EpBreakdown ep_components(const EpInputs& loads, const EmissionFactors& f);

struct EffluentGhg {
    double ch4 = 0.0;  // kg, same time basis as the inputs
    double n2o = 0.0;
};
EffluentGhg effluent_ghg(double bod_kg, double tn_kg, const EmissionFactors& f);

EnergyBreakdown total_energy(const plant::StepFluxes& fx, const EmissionFactors& f);
CostBreakdown life_cycle_cost(const plant::StepFluxes& fx, const CostFactors& c);
GhgBreakdown total_ghg(const plant::StepFluxes& fx, const EmissionFactors& f);

// Full per-m3 impact assessment of one interval (or an aggregate of them).
ImpactVector assess(const plant::StepFluxes& fx, const EmissionFactors& f,
                    const CostFactors& c);

struct Range {
    double min = 0.0;
    double max = 0.0;
    bool set = false;
};

struct NormalizationBounds {
    Range energy, cost, ep, ghg;
};

// Linear min/max map clipped to [0,1]; 0 when the range is degenerate.
// Throws std::invalid_argument when the range was never set.
double normalize(double x, const Range& r);

enum class RewardMode { Lca, Cost };

struct RewardConfig {
    RewardMode mode = RewardMode::Lca;
    double w_energy = 0.38;
    double w_ep = 0.26;
    double w_ghg = 0.36;
    double violation_penalty = 1.0;
    double lambda_smooth = 0.1;
    double lambda_mag = 0.05;
    DischargeStandard standard;

    void validate() const;  // weights >= 0 and summing to 1 within 1e-6
};

// Normalized weights from raw weighting coefficients (energy, ghg, ep).
struct LcaWeights {
    double w_energy, w_ghg, w_ep;
};
LcaWeights lca_weights_from_coefficients(double c_energy, double c_ghg, double c_ep);

struct Compliance {
    bool cod_ok = true, nh3n_ok = true, tn_ok = true, tp_ok = true;
    bool all_ok() const { return cod_ok && nh3n_ok && tn_ok && tp_ok; }
};
Compliance check_standard(const plant::EffluentQuality& eff, const DischargeStandard& std_);

// violation + smoothness + magnitude terms; actions normalized by their box.
double constraint_penalty(const plant::EffluentQuality& eff, const DischargeStandard& std_,
                          const plant::Action& a, const plant::Action& a_prev,
                          const RewardConfig& rc);

// Team reward, shared by both agents. Negative of the weighted normalized
// indicators plus the penalty.
double reward(const ImpactVector& iv, const NormalizationBounds& b, double penalty,
              const RewardConfig& rc);

}  // namespace wwtp::impacts
