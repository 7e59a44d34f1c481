#include "wwtp/impacts.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wwtp;
using namespace wwtp::impacts;

// ---------------------------------------------------------------------------
// Straight-line oracles, written directly from the indicator definitions and
// kept independent of the production code paths they check.
// ---------------------------------------------------------------------------
namespace oracle {

double ep(double tp, double cod, double nh4, double no3, double no2) {
    return 3.07 * tp + 0.022 * cod + 0.33 * nh4 + 0.095 * no3 + 0.13 * no2;
}

double effluent_ch4(double bod) { return bod * 0.25 * 0.035; }
double effluent_n2o(double tn) { return tn * 0.016 * 44.0 / 28.0; }

double energy_total(double aer, double pumps, double fecl3_kg, double pac_kg, double other,
                    double biogas, double volume) {
    const double chem = (fecl3_kg / 0.40) * 3.4 + (pac_kg / 0.25) * 1.94;
    return (aer + pumps + chem + other - biogas) / volume;
}

double cost_total(double direct_kwh, double pac_kg, double fecl3_kg, double cake_kg,
                  double biogas_kwh, double volume) {
    const double c_e = 0.8 * direct_kwh;
    const double c_c = 2.5 * pac_kg + 1.7 * fecl3_kg;
    const double c_t = (fecl3_kg + pac_kg + cake_kg) * 200.0 * 0.005;
    const double c_s = 0.52 * cake_kg;
    const double c_bio = 0.25 * biogas_kwh;
    return (c_e + c_c + c_t + c_s - c_bio) / volume + 0.3;
}

double ghg_total(double direct_kwh, double pac_kg, double fecl3_kg, double cake_kg,
                 double process_n2o, double process_ch4, double eff_bod, double eff_tn,
                 double biogas_kwh, double volume) {
    const double pro = 298.0 * (process_n2o + effluent_n2o(eff_tn)) +
                       25.0 * (process_ch4 + effluent_ch4(eff_bod));
    const double energy = 1.17 * direct_kwh;
    const double material = 0.986 * fecl3_kg + 1.182 * pac_kg +
                            (fecl3_kg + pac_kg + cake_kg) * 200.0 * 0.000192;
    const double bio = 1.17 * biogas_kwh;
    return (pro + energy + material - bio) / volume;
}

}  // namespace oracle

namespace {

plant::StepFluxes unit_volume_fluxes() {
    plant::StepFluxes fx;
    fx.treated_volume = 1.0;
    fx.effluent_volume = 1.0;
    return fx;
}

}  // namespace

TEST(Ep, ZeroLoadsGiveZero) {
    EmissionFactors f;
    EXPECT_DOUBLE_EQ(eutrophication_potential({}, f), 0.0);
}

TEST(Ep, WorkedExampleMatchesOracle) {
    EmissionFactors f;
    EpInputs in{0.0004, 0.030, 0.002, 0.010, 0.0001};
    const double got = eutrophication_potential(in, f);
    const double want = oracle::ep(0.0004, 0.030, 0.002, 0.010, 0.0001);
    EXPECT_NEAR(got, want, 1e-9);
    EXPECT_NEAR(got, 0.003511, 1e-9);
}

TEST(Ep, SingleTermScaling) {
    EmissionFactors f;
    EpInputs in;
    in.tp = 0.001;
    EXPECT_NEAR(eutrophication_potential(in, f), 0.00307, 1e-12);
}

TEST(Ep, NegativeLoadRejected) {
    EmissionFactors f;
    EpInputs in;
    in.cod = -0.1;
    EXPECT_THROW(eutrophication_potential(in, f), std::invalid_argument);
}

TEST(EffluentGhg, ZeroInputs) {
    EmissionFactors f;
    const auto g = effluent_ghg(0.0, 0.0, f);
    EXPECT_DOUBLE_EQ(g.ch4, 0.0);
    EXPECT_DOUBLE_EQ(g.n2o, 0.0);
}

TEST(EffluentGhg, WorkedExamples) {
    EmissionFactors f;
    EXPECT_NEAR(effluent_ghg(20.0, 0.0, f).ch4, 0.175, 1e-9);
    EXPECT_NEAR(effluent_ghg(20.0, 0.0, f).ch4, oracle::effluent_ch4(20.0), 1e-12);
    EXPECT_NEAR(effluent_ghg(0.0, 10.0, f).n2o, 0.25143, 5e-6);
    EXPECT_NEAR(effluent_ghg(0.0, 10.0, f).n2o, oracle::effluent_n2o(10.0), 1e-12);
}

TEST(Energy, AllZeroComponents) {
    EmissionFactors f;
    plant::StepFluxes fx = unit_volume_fluxes();
    EXPECT_DOUBLE_EQ(total_energy(fx, f).total(), 0.0);
}

TEST(Energy, WorkedExample) {
    EmissionFactors f;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.aeration_energy_kwh = 0.23;
    fx.pump_energy_kwh = 0.05;
    fx.other_energy_kwh = 0.25;
    fx.biogas_electricity_kwh = 0.09;
    // Chemical masses chosen so the embodied-energy term is 0.078 kWh.
    fx.pac_pure_used_kg = 0.078 * 0.25 / 1.94;
    const auto e = total_energy(fx, f);
    EXPECT_NEAR(e.chemicals, 0.078, 1e-12);
    EXPECT_NEAR(e.total(), 0.518, 1e-9);
    EXPECT_NEAR(e.total(),
                oracle::energy_total(0.23, 0.05, 0.0, fx.pac_pure_used_kg, 0.25, 0.09, 1.0),
                1e-12);
}

TEST(Energy, BiogasMayExceedConsumption) {
    EmissionFactors f;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.aeration_energy_kwh = 0.1;
    fx.biogas_electricity_kwh = 0.5;
    EXPECT_LT(total_energy(fx, f).total(), 0.0);
}

TEST(Cost, AllZeroFluxesLeaveOnlyMisc) {
    CostFactors c;
    plant::StepFluxes fx;  // zero volume, zero loads
    EXPECT_DOUBLE_EQ(life_cycle_cost(fx, c).total(), 0.3);
}

TEST(Cost, WorkedExample) {
    CostFactors c;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.aeration_energy_kwh = 0.5;  // all direct energy on one component
    fx.pac_pure_used_kg = 0.03;
    fx.fecl3_used_kg = 0.005;
    fx.cake_mass_kg = 0.08;
    fx.biogas_electricity_kwh = 0.05;
    const auto b = life_cycle_cost(fx, c);
    EXPECT_NEAR(b.energy, 0.4, 1e-12);
    EXPECT_NEAR(b.chemicals, 0.0835, 1e-12);
    EXPECT_NEAR(b.transport, 0.115, 1e-12);
    EXPECT_NEAR(b.landfill, 0.0416, 1e-12);
    EXPECT_NEAR(b.biogas, 0.0125, 1e-12);
    EXPECT_NEAR(b.total(), 0.9276, 1e-9);
    EXPECT_NEAR(b.total(), oracle::cost_total(0.5, 0.03, 0.005, 0.08, 0.05, 1.0), 1e-12);
}

TEST(Cost, ElectricityPriceScalesOnlyEnergyPart) {
    CostFactors c;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.aeration_energy_kwh = 0.5;
    fx.cake_mass_kg = 0.1;
    const auto before = life_cycle_cost(fx, c);
    c.electricity *= 2.0;
    const auto after = life_cycle_cost(fx, c);
    EXPECT_DOUBLE_EQ(after.energy, 2.0 * before.energy);
    EXPECT_DOUBLE_EQ(after.landfill, before.landfill);
    EXPECT_DOUBLE_EQ(after.transport, before.transport);
}

TEST(Ghg, WorkedExample) {
    EmissionFactors f;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.aeration_energy_kwh = 0.5;
    fx.pac_pure_used_kg = 0.03125;
    fx.fecl3_used_kg = 0.005;
    fx.cake_mass_kg = 0.115 - 0.03125 - 0.005;  // transported mass 0.115 kg
    fx.process_n2o_kg = 1.8 / 298.0;            // process term of 1.8 kg CO2-eq
    fx.biogas_electricity_kwh = 0.09;
    const auto g = total_ghg(fx, f);
    EXPECT_NEAR(g.process, 1.8, 1e-12);
    EXPECT_NEAR(g.energy, 0.585, 1e-12);
    EXPECT_NEAR(g.material, 0.0369375 + 0.00493 + 0.004416, 1e-12);
    EXPECT_NEAR(g.biogas, 0.1053, 1e-12);
    EXPECT_NEAR(g.total(), 2.326, 5e-4);
    EXPECT_NEAR(g.total(),
                oracle::ghg_total(0.5, 0.03125, 0.005, fx.cake_mass_kg, fx.process_n2o_kg,
                                  0.0, 0.0, 0.0, 0.09, 1.0),
                1e-12);
}

TEST(Ghg, SingleN2oFactor) {
    EmissionFactors f;
    plant::StepFluxes fx = unit_volume_fluxes();
    fx.process_n2o_kg = 0.01;
    EXPECT_NEAR(total_ghg(fx, f).total(), 2.98, 1e-12);
}

// Linearity: scaling all fluxes (including the treated volume) leaves per-m3
// indicators unchanged; scaling loads at fixed volume scales the totals.
TEST(Indicators, OracleAgreementOnRandomFluxes) {
    EmissionFactors f;
    CostFactors c;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        plant::StepFluxes fx = unit_volume_fluxes();
        fx.aeration_energy_kwh = u(rng);
        fx.pump_energy_kwh = 0.1 * u(rng);
        fx.other_energy_kwh = u(rng);
        fx.biogas_electricity_kwh = 0.2 * u(rng);
        fx.fecl3_used_kg = 0.01 * u(rng);
        fx.pac_pure_used_kg = 0.05 * u(rng);
        fx.cake_mass_kg = 0.5 * u(rng);
        fx.process_n2o_kg = 0.005 * u(rng);
        fx.process_ch4_kg = 0.01 * u(rng);
        fx.eff_bod_kg = 0.02 * u(rng);
        fx.eff_tn_kg = 0.015 * u(rng);
        fx.eff_tp_kg = 0.001 * u(rng);
        fx.eff_cod_kg = 0.04 * u(rng);
        fx.eff_nh4_kg = 0.004 * u(rng);
        fx.eff_no3_kg = 0.012 * u(rng);

        const double direct =
            fx.aeration_energy_kwh + fx.pump_energy_kwh + fx.other_energy_kwh;
        EXPECT_NEAR(total_energy(fx, f).total(),
                    oracle::energy_total(fx.aeration_energy_kwh, fx.pump_energy_kwh,
                                         fx.fecl3_used_kg, fx.pac_pure_used_kg,
                                         fx.other_energy_kwh, fx.biogas_electricity_kwh, 1.0),
                    1e-12);
        EXPECT_NEAR(life_cycle_cost(fx, c).total(),
                    oracle::cost_total(direct, fx.pac_pure_used_kg, fx.fecl3_used_kg,
                                       fx.cake_mass_kg, fx.biogas_electricity_kwh, 1.0),
                    1e-12);
        EXPECT_NEAR(total_ghg(fx, f).total(),
                    oracle::ghg_total(direct, fx.pac_pure_used_kg, fx.fecl3_used_kg,
                                      fx.cake_mass_kg, fx.process_n2o_kg, fx.process_ch4_kg,
                                      fx.eff_bod_kg, fx.eff_tn_kg,
                                      fx.biogas_electricity_kwh, 1.0),
                    1e-12);
        EXPECT_NEAR(
            eutrophication_potential({fx.eff_tp_kg, fx.eff_cod_kg, fx.eff_nh4_kg,
                                      fx.eff_no3_kg, fx.eff_no2_kg},
                                     f),
            oracle::ep(fx.eff_tp_kg, fx.eff_cod_kg, fx.eff_nh4_kg, fx.eff_no3_kg,
                       fx.eff_no2_kg),
            1e-12);

        // Component sums reproduce totals.
        const auto iv = assess(fx, f, c);
        EXPECT_NEAR(iv.energy_total,
                    iv.energy.aeration + iv.energy.pumps + iv.energy.chemicals +
                        iv.energy.other - iv.energy.biogas,
                    1e-9);
        EXPECT_NEAR(iv.cost_total,
                    iv.cost.energy + iv.cost.chemicals + iv.cost.transport +
                        iv.cost.landfill + iv.cost.misc - iv.cost.biogas,
                    1e-9);
        EXPECT_NEAR(iv.ghg_total,
                    iv.ghg.process + iv.ghg.energy + iv.ghg.material - iv.ghg.biogas, 1e-9);
        EXPECT_NEAR(iv.ep_total, iv.ep.tp + iv.ep.cod + iv.ep.nh4 + iv.ep.no3 + iv.ep.no2,
                    1e-9);

        // Linearity in the loads at fixed volume.
        plant::StepFluxes fx2 = fx;
        const double kscale = 0.5 + u(rng);
        fx2.aeration_energy_kwh *= kscale;
        fx2.pump_energy_kwh *= kscale;
        fx2.other_energy_kwh *= kscale;
        fx2.biogas_electricity_kwh *= kscale;
        fx2.fecl3_used_kg *= kscale;
        fx2.pac_pure_used_kg *= kscale;
        EXPECT_NEAR(total_energy(fx2, f).total(), kscale * total_energy(fx, f).total(),
                    1e-10);
    }
}

TEST(Normalize, EndpointAndMidpointAndClip) {
    Range r{0.0, 10.0, true};
    EXPECT_DOUBLE_EQ(normalize(0.0, r), 0.0);
    EXPECT_DOUBLE_EQ(normalize(10.0, r), 1.0);
    EXPECT_DOUBLE_EQ(normalize(5.0, r), 0.5);
    EXPECT_DOUBLE_EQ(normalize(12.0, r), 1.0);
    EXPECT_DOUBLE_EQ(normalize(-3.0, r), 0.0);
}

TEST(Normalize, DegenerateAndMissing) {
    Range degenerate{4.0, 4.0, true};
    EXPECT_DOUBLE_EQ(normalize(4.0, degenerate), 0.0);
    Range unset;
    EXPECT_THROW(normalize(1.0, unset), std::invalid_argument);
}

TEST(Standards, PresetLimits) {
    const auto ia = grade_ia();
    EXPECT_DOUBLE_EQ(ia.tp, 0.5);
    const auto sw = quasi_sw_iv();
    EXPECT_DOUBLE_EQ(sw.tp, 0.3);
    EXPECT_DOUBLE_EQ(sw.nh3n, 1.5);
    const auto ib = grade_ib();
    EXPECT_DOUBLE_EQ(ib.nh3n, 8.0);
    EXPECT_THROW(standard_by_name("nope"), std::invalid_argument);
}

TEST(Standards, CheckAgainstLimits) {
    plant::EffluentQuality eff;
    EXPECT_TRUE(check_standard(eff, grade_ia()).all_ok());

    eff.tp = 0.4;
    EXPECT_TRUE(check_standard(eff, grade_ia()).all_ok());
    EXPECT_FALSE(check_standard(eff, quasi_sw_iv()).all_ok());

    // Exactly at a limit passes.
    eff = plant::EffluentQuality{};
    eff.nh4n = 5.0;
    EXPECT_TRUE(check_standard(eff, grade_ia()).nh3n_ok);
    eff.nh4n = 5.0000001;
    EXPECT_FALSE(check_standard(eff, grade_ia()).nh3n_ok);
}

TEST(Penalty, CompliantStillActionsAtBoxMinimum) {
    RewardConfig rc;
    rc.standard = grade_ia();
    plant::EffluentQuality eff;
    plant::Action a{0.0, 0.0};
    EXPECT_DOUBLE_EQ(constraint_penalty(eff, rc.standard, a, a, rc), 0.0);
}

TEST(Penalty, ViolationAddsUnitPenalty) {
    RewardConfig rc;
    rc.standard = grade_ia();
    rc.lambda_smooth = 0.0;
    rc.lambda_mag = 0.0;
    plant::EffluentQuality eff;
    eff.tp = 0.7;
    plant::Action a{0.0, 0.0};
    EXPECT_DOUBLE_EQ(constraint_penalty(eff, rc.standard, a, a, rc), 1.0);
}

TEST(Penalty, SmoothnessTerm) {
    RewardConfig rc;
    rc.standard = grade_ia();
    rc.lambda_smooth = 0.1;
    rc.lambda_mag = 0.0;
    plant::EffluentQuality eff;
    plant::Action prev{0.0, 0.2};
    plant::Action now{5.0, 0.2};  // DO jumps the full box
    EXPECT_NEAR(constraint_penalty(eff, rc.standard, now, prev, rc),
                0.1 * 1.0 + 0.0, 1e-12);
}

TEST(Penalty, MagnitudeTerm) {
    RewardConfig rc;
    rc.standard = grade_ia();
    rc.lambda_smooth = 0.0;
    rc.lambda_mag = 0.05;
    plant::EffluentQuality eff;
    plant::Action a{2.5, 0.25};  // both at half the box
    EXPECT_NEAR(constraint_penalty(eff, rc.standard, a, a, rc), 0.05 * (0.5 + 0.5), 1e-12);
}

TEST(Reward, ConvexWeightsAtHalf) {
    RewardConfig rc;
    rc.validate();
    NormalizationBounds b;
    b.energy = {0.0, 1.0, true};
    b.cost = {0.0, 1.0, true};
    b.ep = {0.0, 1.0, true};
    b.ghg = {0.0, 1.0, true};
    ImpactVector iv;
    iv.energy_total = 0.5;
    iv.ep_total = 0.5;
    iv.ghg_total = 0.5;
    iv.cost_total = 0.5;
    EXPECT_NEAR(reward(iv, b, 0.0, rc), -0.5, 1e-12);

    rc.mode = RewardMode::Cost;
    EXPECT_NEAR(reward(iv, b, 0.0, rc), -0.5, 1e-12);
}

TEST(Reward, PenaltyDominatesZeroIndicators) {
    RewardConfig rc;
    NormalizationBounds b;
    b.energy = {0.0, 1.0, true};
    b.cost = {0.0, 1.0, true};
    b.ep = {0.0, 1.0, true};
    b.ghg = {0.0, 1.0, true};
    ImpactVector iv;
    EXPECT_DOUBLE_EQ(reward(iv, b, 1.0, rc), -1.0);
}

TEST(Reward, MonotoneInIndicatorsAndPenalty) {
    RewardConfig rc;
    NormalizationBounds b;
    b.energy = {0.0, 1.0, true};
    b.cost = {0.0, 1.0, true};
    b.ep = {0.0, 1.0, true};
    b.ghg = {0.0, 1.0, true};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ImpactVector a, worse;
        a.energy_total = u(rng);
        a.ep_total = u(rng);
        a.ghg_total = u(rng);
        a.cost_total = u(rng);
        worse = a;
        worse.energy_total = std::min(1.0, a.energy_total + 0.1);
        worse.ghg_total = std::min(1.0, a.ghg_total + 0.05);
        const double pen = u(rng);
        EXPECT_LE(reward(worse, b, pen, rc), reward(a, b, pen, rc) + 1e-12);
        EXPECT_LE(reward(a, b, pen + 0.1, rc), reward(a, b, pen, rc));
    }
}

TEST(Reward, WeightsFromRawCoefficients) {
    const auto w = lca_weights_from_coefficients(2.900, 2.754, 2.017);
    EXPECT_NEAR(w.w_energy, 0.378, 5e-4);
    EXPECT_NEAR(w.w_ghg, 0.359, 5e-4);
    EXPECT_NEAR(w.w_ep, 0.263, 5e-4);
    // The rounded configuration weights sum to exactly one.
    RewardConfig rc;
    EXPECT_NEAR(rc.w_energy + rc.w_ep + rc.w_ghg, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(rc.w_energy, 0.38);
    EXPECT_DOUBLE_EQ(rc.w_ep, 0.26);
    EXPECT_DOUBLE_EQ(rc.w_ghg, 0.36);
}

TEST(Reward, ConfigValidation) {
    RewardConfig rc;
    EXPECT_NO_THROW(rc.validate());
    rc.w_energy = 0.5;
    EXPECT_THROW(rc.validate(), std::invalid_argument);
}

TEST(Assess, ZeroVolumeWithLoadsRejected) {
    plant::StepFluxes fx;
    fx.eff_tp_kg = 0.1;
    EXPECT_THROW(assess(fx, EmissionFactors{}, CostFactors{}), std::invalid_argument);
}
