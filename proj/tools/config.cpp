#include "config.hpp"

namespace wwtp::cli {

void attach_options(CLI::App& app, RunConfig& cfg) {
    app.set_config("--config", "", "TOML configuration file; sections mirror these groups");

    auto& inf = cfg.run.env.influent;
    auto* gi = app.add_option_group("influent");
    gi->add_option("--influent.mean_flow", inf.mean_flow, "mean inflow [m3/d]");
    gi->add_option("--influent.flow_amplitude", inf.flow_amplitude,
                   "diurnal flow amplitude [fraction of mean]");
    gi->add_option("--influent.peak_hour_morning", inf.peak_hour_morning,
                   "morning peak [hour of day]");
    gi->add_option("--influent.peak_hour_evening", inf.peak_hour_evening,
                   "evening peak [hour of day]");
    gi->add_option("--influent.peak_width_h", inf.peak_width_h, "peak half-width [h]");
    gi->add_option("--influent.mean_cod", inf.mean_cod, "mean influent COD [g/m3]");
    gi->add_option("--influent.mean_tn", inf.mean_tn, "mean influent TN [g/m3]");
    gi->add_option("--influent.mean_nh3n", inf.mean_nh3n, "mean influent NH3-N [g/m3]");
    gi->add_option("--influent.mean_tp", inf.mean_tp, "mean influent TP [g/m3]");
    gi->add_option("--influent.concentration_amplitude", inf.concentration_amplitude,
                   "diurnal concentration amplitude [fraction]");
    gi->add_option("--influent.dilution_coupling", inf.dilution_coupling,
                   "high-flow dilution coupling [-]");

    auto& pl = cfg.run.env.plant;
    auto* gp = app.add_option_group("plant");
    gp->add_option("--plant.vol_primary", pl.vol_primary, "primary clarifier volume [m3]");
    gp->add_option("--plant.vol_anaerobic", pl.vol_anaerobic, "anaerobic tank volume [m3]");
    gp->add_option("--plant.vol_anoxic1", pl.vol_anoxic1, "anoxic tank 1 volume [m3]");
    gp->add_option("--plant.vol_anoxic2", pl.vol_anoxic2, "anoxic tank 2 volume [m3]");
    gp->add_option("--plant.vol_aerobic", pl.vol_aerobic, "aerobic tank volume [m3]");
    gp->add_option("--plant.vol_clarifier", pl.vol_clarifier,
                   "secondary clarifier volume [m3]");
    gp->add_option("--plant.sludge_recycle_ratio", pl.sludge_recycle_ratio,
                   "RAS ratio [x influent flow]");
    gp->add_option("--plant.irr_anox1_to_anaerobic", pl.irr_anox1_to_anaerobic,
                   "internal recycle anoxic1->anaerobic [x influent flow]");
    gp->add_option("--plant.irr_aerobic_to_anox2", pl.irr_aerobic_to_anox2,
                   "internal recycle aerobic->anoxic2 [x influent flow]");
    gp->add_option("--plant.srt_target_d", pl.srt_target_d, "target solids retention [d]");
    gp->add_option("--plant.fecl3_dose_kg_per_kg_tss", pl.fecl3_dose_kg_per_kg_tss,
                   "FeCl3(100%) conditioning dose [kg/kg TSS]");
    gp->add_option("--plant.p_binding", pl.p_binding,
                   "P bound per PAC(100%) [kg P/kg PAC]");
    gp->add_option("--plant.pac_solution_fraction", pl.pac_solution_fraction,
                   "PAC solution strength [-]");
    gp->add_option("--plant.fecl3_solution_fraction", pl.fecl3_solution_fraction,
                   "FeCl3 solution strength [-]");
    gp->add_option("--plant.sae", pl.sae, "aeration efficiency at zero DO [kg O2/kWh]");
    gp->add_option("--plant.do_sat", pl.do_sat, "oxygen saturation [g/m3]");
    gp->add_option("--plant.primary_removal", pl.primary_removal,
                   "primary clarifier particulate removal [fraction]");
    gp->add_option("--plant.effluent_tss", pl.effluent_tss,
                   "secondary clarifier effluent TSS [g/m3]");
    gp->add_option("--plant.tss_per_cod", pl.tss_per_cod, "TSS per particulate COD [g/g]");
    gp->add_option("--plant.dewatered_solids", pl.dewatered_solids,
                   "cake dry-solids content [fraction]");
    gp->add_option("--plant.mixing_w_per_m3", pl.mixing_w_per_m3, "mixing power [W/m3]");
    gp->add_option("--plant.fixed_other_kw", pl.fixed_other_kw, "fixed other power [kW]");
    gp->add_option("--plant.primary_sludge_tss", pl.primary_sludge_tss,
                   "primary sludge solids [g/m3]");
    gp->add_option("--plant.thickened_tss", pl.thickened_tss, "thickened sludge solids [g/m3]");
    gp->add_option("--plant.n2o_frac_base", pl.n2o_frac_base,
                   "N2O-N fraction of nitrified N at high DO [-]");
    gp->add_option("--plant.n2o_frac_span", pl.n2o_frac_span,
                   "extra N2O-N fraction at zero DO [-]");
    gp->add_option("--plant.n2o_do_decay", pl.n2o_do_decay, "N2O fraction DO decay [g/m3]");
    gp->add_option("--plant.bod_per_cod", pl.bod_per_cod, "effluent BOD per COD [g/g]");
    gp->add_option("--plant.chem_sludge_per_pac", pl.chem_sludge_per_pac,
                   "chemical sludge per PAC(100%) [kg/kg]");
    gp->add_option("--plant.chem_sludge_per_p", pl.chem_sludge_per_p,
                   "chemical sludge per P precipitated [kg/kg]");
    gp->add_option("--plant.euler_substep_d", pl.euler_substep_d,
                   "integration sub-step [d]");
    gp->add_option("--plant.pump_h_static", pl.pump.h_static, "static head [m]");
    gp->add_option("--plant.pump_h_friction", pl.pump.h_friction, "friction head [m]");
    gp->add_option("--plant.pump_efficiency", pl.pump.efficiency, "pump efficiency [-]");
    gp->add_option("--plant.vs_destruction", pl.digester.vs_destruction,
                   "digester degradable COD destruction [fraction]");
    gp->add_option("--plant.ch4_yield", pl.digester.ch4_yield,
                   "CH4 yield [m3/kg COD destroyed]");
    gp->add_option("--plant.fugitive_ch4", pl.digester.fugitive_ch4,
                   "fugitive CH4 [fraction of volume]");
    gp->add_option("--plant.ch4_density", pl.digester.ch4_density, "CH4 density [kg/m3]");
    gp->add_option("--plant.chp_electrical_efficiency", pl.chp.electrical_efficiency,
                   "CHP electrical efficiency [-]");
    gp->add_option("--plant.ch4_lhv", pl.chp.ch4_lhv, "CH4 lower heating value [kWh/m3]");

    auto& kin = pl.kin;
    auto* gk = app.add_option_group("kinetics");
    gk->add_option("--kinetics.mu_h", kin.mu_h, "max heterotrophic growth [1/d]");
    gk->add_option("--kinetics.mu_a", kin.mu_a, "nitrification rate constant [g N/g XA/d]");
    gk->add_option("--kinetics.k_s", kin.k_s, "substrate half-saturation [g COD/m3]");
    gk->add_option("--kinetics.k_nh", kin.k_nh, "ammonia half-saturation [g N/m3]");
    gk->add_option("--kinetics.k_oh", kin.k_oh, "heterotroph O2 half-saturation [g/m3]");
    gk->add_option("--kinetics.k_oa", kin.k_oa, "autotroph O2 half-saturation [g/m3]");
    gk->add_option("--kinetics.k_no", kin.k_no, "nitrate half-saturation [g N/m3]");
    gk->add_option("--kinetics.y_h", kin.y_h, "heterotroph yield [g COD/g COD]");
    gk->add_option("--kinetics.y_a", kin.y_a, "autotroph yield [g COD/g N]");
    gk->add_option("--kinetics.b_h", kin.b_h, "heterotroph decay [1/d]");
    gk->add_option("--kinetics.b_a", kin.b_a, "autotroph decay [1/d]");
    gk->add_option("--kinetics.eta_g", kin.eta_g, "anoxic growth factor [-]");
    gk->add_option("--kinetics.i_n", kin.i_n, "biomass N content [g N/g COD]");
    gk->add_option("--kinetics.i_p", kin.i_p, "biomass P content [g P/g COD]");
    gk->add_option("--kinetics.f_xi_decay", kin.f_xi_decay,
                   "decay fraction to inerts [-]");

    auto& fr = pl.frac;
    auto* gf = app.add_option_group("fractions");
    gf->add_option("--fractions.f_ss", fr.f_ss, "soluble biodegradable COD fraction [-]");
    gf->add_option("--fractions.f_xi", fr.f_xi, "particulate inert COD fraction [-]");
    gf->add_option("--fractions.f_xh", fr.f_xh, "particulate biomass COD fraction [-]");
    gf->add_option("--fractions.ammonifiable_orgn", fr.ammonifiable_orgn,
                   "ammonifiable share of dissolved organic N [-]");

    auto& ef = cfg.run.env.factors;
    auto* ge = app.add_option_group("factors");
    ge->add_option("--factors.ep_tp", ef.ep_tp, "EP factor TP [kg PO4-eq/kg]");
    ge->add_option("--factors.ep_cod", ef.ep_cod, "EP factor COD [kg PO4-eq/kg]");
    ge->add_option("--factors.ep_nh4", ef.ep_nh4, "EP factor NH4 [kg PO4-eq/kg]");
    ge->add_option("--factors.ep_no3", ef.ep_no3, "EP factor NO3 [kg PO4-eq/kg]");
    ge->add_option("--factors.ep_no2", ef.ep_no2, "EP factor NO2 [kg PO4-eq/kg]");
    ge->add_option("--factors.ghg_electricity", ef.ghg_electricity,
                   "grid emission factor [kg CO2-eq/kWh]");
    ge->add_option("--factors.ghg_fecl3", ef.ghg_fecl3,
                   "FeCl3(100%) emission factor [kg CO2-eq/kg]");
    ge->add_option("--factors.ghg_pac", ef.ghg_pac,
                   "PAC(100%) emission factor [kg CO2-eq/kg]");
    ge->add_option("--factors.ghg_transport", ef.ghg_transport,
                   "road transport emission factor [kg CO2-eq/(kg km)]");
    ge->add_option("--factors.transport_distance_km", ef.transport_distance_km,
                   "average transport distance [km]");
    ge->add_option("--factors.gwp_n2o", ef.gwp_n2o, "N2O GWP [kg CO2-eq/kg]");
    ge->add_option("--factors.gwp_ch4", ef.gwp_ch4, "CH4 GWP [kg CO2-eq/kg]");
    ge->add_option("--factors.ipcc_bo", ef.ipcc_bo, "max CH4 capacity [kg CH4/kg BOD]");
    ge->add_option("--factors.ipcc_mcf", ef.ipcc_mcf, "methane correction factor [-]");
    ge->add_option("--factors.ipcc_ef", ef.ipcc_ef,
                   "effluent N2O factor [kg N2O-N/kg N]");
    ge->add_option("--factors.chem_energy_fecl3_40", ef.chem_energy_fecl3_40,
                   "embodied energy FeCl3 40% solution [kWh/kg]");
    ge->add_option("--factors.chem_energy_pac_25", ef.chem_energy_pac_25,
                   "embodied energy PAC 25% solution [kWh/kg]");

    auto& co = cfg.run.env.costs;
    auto* gc = app.add_option_group("costs");
    gc->add_option("--costs.electricity", co.electricity, "electricity price [CNY/kWh]");
    gc->add_option("--costs.fecl3", co.fecl3, "FeCl3(100%) price [CNY/kg]");
    gc->add_option("--costs.pac", co.pac, "PAC(100%) price [CNY/kg]");
    gc->add_option("--costs.transport", co.transport, "transport price [CNY/(kg km)]");
    gc->add_option("--costs.distance_km", co.distance_km, "transport distance [km]");
    gc->add_option("--costs.landfill", co.landfill, "landfill fee [CNY/kg wet sludge]");
    gc->add_option("--costs.biogas_subsidy", co.biogas_subsidy,
                   "renewable electricity subsidy [CNY/kWh]");
    gc->add_option("--costs.misc", co.misc, "miscellaneous cost [CNY/m3]");

    auto& rw = cfg.run.reward_template;
    auto* gr = app.add_option_group("reward");
    gr->add_option("--reward.w_energy", rw.w_energy, "energy weight [-]");
    gr->add_option("--reward.w_ep", rw.w_ep, "eutrophication weight [-]");
    gr->add_option("--reward.w_ghg", rw.w_ghg, "GHG weight [-]");
    gr->add_option("--reward.violation_penalty", rw.violation_penalty,
                   "penalty per violating interval [-]");
    gr->add_option("--reward.lambda_smooth", rw.lambda_smooth,
                   "action smoothness coefficient [-]");
    gr->add_option("--reward.lambda_mag", rw.lambda_mag,
                   "action magnitude coefficient [-]");

    auto& tr = cfg.run.train_template;
    auto* gt = app.add_option_group("train");
    gt->add_option("--train.gamma", tr.gamma, "discount factor [-]");
    gt->add_option("--train.tau", tr.tau, "soft target update rate [-]");
    gt->add_option("--train.batch_size", tr.batch_size, "minibatch size [transitions]");
    gt->add_option("--train.total_steps", tr.total_steps, "training interactions [steps]");
    gt->add_option("--train.buffer_capacity", tr.buffer_capacity,
                   "replay buffer capacity [transitions]");
    gt->add_option("--train.actor_lr", tr.actor_lr, "actor learning rate [-]");
    gt->add_option("--train.critic_lr", tr.critic_lr, "critic learning rate [-]");
    gt->add_option("--train.noise_sigma0_frac", tr.noise_sigma0_frac,
                   "initial exploration sigma [fraction of action range]");
    gt->add_option("--train.noise_decay_per_epoch", tr.noise_decay_per_epoch,
                   "sigma decay per epoch [-]");
    gt->add_option("--train.epoch_intervals", tr.epoch_intervals,
                   "control intervals per epoch [steps]");
    gt->add_option("--train.hidden", tr.hidden, "hidden layer sizes [units]");
    gt->add_option("--train.bounds_samples", tr.bounds_samples,
                   "Monte-Carlo normalization samples [intervals]");
    gt->add_option("--train.start_snapshot_stride", tr.start_snapshot_stride,
                   "snapshot every k sample intervals [intervals]");

    auto& en = cfg.run.env;
    auto* gn = app.add_option_group("env");
    gn->add_option("--env.dt_control_d", en.dt_control_d, "control interval [d]");
    gn->add_option("--env.warmup_days", en.warmup_days, "warm-up horizon [d]");
    gn->add_option("--env.warmup_do", en.warmup_action.do_setpoint,
                   "warm-up DO set-point [g O2/m3]");
    gn->add_option("--env.warmup_dose", en.warmup_action.pac_dose,
                   "warm-up PAC dose [kg solution/m3]");
    gn->add_option("--env.eval_days", cfg.run.eval_days, "evaluation horizon [d]");
    gn->add_option("--env.seeds", cfg.run.seeds, "evaluation seed list [-]");
}

}  // namespace wwtp::cli
