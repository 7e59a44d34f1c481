#include "wwtp/plant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wwtp::plant {

namespace {

constexpr double kGramsPerKg = 1000.0;
constexpr double kHoursPerDay = 24.0;
constexpr double kO2PerNitrifiedN = 4.57;  // g O2 per g N, before dividing by y_a
constexpr double kDenitCodFactor = 2.86;   // g COD oxidised per g NO3-N
constexpr double kN2oPerN = 44.0 / 28.0;

struct Flows {
    double q;        // influent, m3/d
    double q_an;     // through anaerobic
    double q_ax1;    // through anoxic 1
    double q_fwd;    // anoxic 1 -> anoxic 2
    double q_ax2;    // through anoxic 2 (= through aerobic)
    double q_feed;   // aerobic -> clarifier
    double q_eff;    // effluent
    double q_under;  // clarifier underflow (RAS + wastage)
    double q_ras;
    double q_waste;
};

Flows make_flows(double q, double q_waste, const PlantParams& p) {
    Flows f{};
    f.q = q;
    f.q_an = q + p.irr_anox1_to_anaerobic * q;
    f.q_ax1 = f.q_an + p.sludge_recycle_ratio * q;
    f.q_fwd = q + p.sludge_recycle_ratio * q;
    f.q_ax2 = f.q_fwd + p.irr_aerobic_to_anox2 * q;
    f.q_feed = q + p.sludge_recycle_ratio * q;
    f.q_waste = q_waste;
    f.q_eff = q - q_waste;
    f.q_under = p.sludge_recycle_ratio * q + q_waste;
    f.q_ras = p.sludge_recycle_ratio * q;
    return f;
}

double n2o_fraction(double dissolved_oxygen, const PlantParams& p) {
    return p.n2o_frac_base + p.n2o_frac_span * std::exp(-dissolved_oxygen / p.n2o_do_decay);
}

}  // namespace

double tank_cod(const TankState& t) { return t.ss + t.xh + t.xa + t.xi; }
double tank_n(const TankState& t, const Kinetics& k) {
    return t.snh + t.sno + k.i_n * (t.xh + t.xa);
}
double tank_p(const TankState& t, const Kinetics& k) {
    return t.spo + k.i_p * (t.xh + t.xa);
}

const char* TankState::field_name(std::size_t i) {
    static constexpr const char* names[kNumFields] = {"SS", "SNH", "SNO", "SPO",
                                                      "XH", "XA", "XI"};
    return i < kNumFields ? names[i] : "?";
}

Action Action::clipped() const {
    Action a;
    a.do_setpoint = std::clamp(do_setpoint, kDoMin, kDoMax);
    a.pac_dose = std::clamp(pac_dose, kDoseMin, kDoseMax);
    return a;
}

void PlantParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("plant: ") + name + " must be > 0");
    };
    auto unit_interval = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument(std::string("plant: ") + name + " must be in (0,1)");
    };
    positive(vol_primary, "vol_primary");
    positive(vol_anaerobic, "vol_anaerobic");
    positive(vol_anoxic1, "vol_anoxic1");
    positive(vol_anoxic2, "vol_anoxic2");
    positive(vol_aerobic, "vol_aerobic");
    positive(vol_clarifier, "vol_clarifier");
    positive(srt_target_d, "srt_target_d");
    positive(sae, "sae");
    positive(do_sat, "do_sat");
    positive(tss_per_cod, "tss_per_cod");
    positive(euler_substep_d, "euler_substep_d");
    positive(primary_sludge_tss, "primary_sludge_tss");
    positive(thickened_tss, "thickened_tss");
    unit_interval(kin.y_h, "kin.y_h");
    unit_interval(kin.y_a, "kin.y_a");
    unit_interval(kin.f_xi_decay, "kin.f_xi_decay");
    if (digester.vs_destruction < 0.0 || digester.vs_destruction >= 1.0)
        throw std::invalid_argument("plant: digester.vs_destruction must be in [0,1)");
    unit_interval(chp.electrical_efficiency, "chp.electrical_efficiency");
    unit_interval(dewatered_solids, "dewatered_solids");
    unit_interval(pump.efficiency, "pump.efficiency");
    if (primary_removal < 0.0 || primary_removal > 1.0)
        throw std::invalid_argument("plant: primary_removal must be in [0,1]");
    const double fsum = frac.f_ss + frac.f_xi + frac.f_xh;
    if (std::abs(fsum - 1.0) > 1e-9)
        throw std::invalid_argument("plant: influent COD fractions must sum to 1");
    if (frac.ammonifiable_orgn < 0.0 || frac.ammonifiable_orgn > 1.0)
        throw std::invalid_argument("plant: ammonifiable_orgn must be in [0,1]");
}

ProcessRates process_rates(const TankState& t, double dissolved_oxygen,
                           const PlantParams& p) {
    if (dissolved_oxygen < 0.0)
        throw std::invalid_argument("process_rates: DO must be >= 0");
    const Kinetics& k = p.kin;
    const double monod_ss = t.ss / (k.k_s + t.ss);
    const double monod_do = dissolved_oxygen / (k.k_oh + dissolved_oxygen);
    const double inhib_do = k.k_oh / (k.k_oh + dissolved_oxygen);
    const double monod_no = t.sno / (k.k_no + t.sno);
    const double monod_nh = t.snh / (k.k_nh + t.snh);
    const double monod_doa = dissolved_oxygen / (k.k_oa + dissolved_oxygen);

    ProcessRates r;
    r.growth_aerobic = k.mu_h * monod_ss * monod_do * t.xh;
    r.growth_anoxic = k.mu_h * k.eta_g * monod_ss * inhib_do * monod_no * t.xh;
    r.nitrification = k.mu_a * monod_nh * monod_doa * t.xa;
    r.decay_h = k.b_h * t.xh;
    r.decay_a = k.b_a * t.xa;
    return r;
}

double aeration_energy(double our_kg, double dissolved_oxygen, const PlantParams& p) {
    if (our_kg < 0.0) throw std::invalid_argument("aeration_energy: OUR must be >= 0");
    if (dissolved_oxygen < 0.0 || dissolved_oxygen >= p.do_sat)
        throw std::invalid_argument("aeration_energy: DO outside [0, do_sat)");
    const double driving_force = (p.do_sat - dissolved_oxygen) / p.do_sat;
    return our_kg / (p.sae * driving_force);
}

double pump_energy(double q_m3s, const PlantParams& p) {
    if (q_m3s < 0.0) throw std::invalid_argument("pump_energy: flow must be >= 0");
    const double head = p.pump.h_static + p.pump.h_friction;
    const double rho = 1000.0, g = 9.8;
    return rho * g * q_m3s * head / (1000.0 * p.pump.efficiency);
}

InfluentComposition fractionate(const influent::InfluentRecord& inf, const PlantParams& p) {
    const Kinetics& k = p.kin;
    InfluentComposition c{};
    c.ss = p.frac.f_ss * inf.cod;
    c.xi = p.frac.f_xi * inf.cod;
    c.xh = p.frac.f_xh * inf.cod;
    const double particulate_n = k.i_n * c.xh;  // XI carries no nutrients
    const double org_n = std::max(0.0, inf.tn - inf.nh3n);
    const double dissolved_org_n = std::max(0.0, org_n - particulate_n);
    c.snh = inf.nh3n + p.frac.ammonifiable_orgn * dissolved_org_n;
    c.inert_soluble_n = (1.0 - p.frac.ammonifiable_orgn) * dissolved_org_n;
    c.sno = 0.0;
    c.spo = std::max(0.0, inf.tp - k.i_p * c.xh);
    return c;
}

std::pair<PlantState, StepFluxes> step(const PlantState& state,
                                       const influent::InfluentRecord& inf,
                                       const Action& action_in, double dt_control_d,
                                       const PlantParams& p) {
    if (!(dt_control_d > 0.0)) throw std::invalid_argument("plant step: dt must be > 0");
    const Action action = action_in.clipped();
    const Kinetics& kin = p.kin;

    PlantState next = state;
    StepFluxes fx{};
    fx.treated_volume = inf.q * dt_control_d;

    // ---- influent after the primary clarifier ----------------------------
    InfluentComposition raw = fractionate(inf, p);
    const double ps_xh = p.primary_removal * raw.xh;  // g/m3 removed
    const double ps_xi = p.primary_removal * raw.xi;
    InfluentComposition pe = raw;
    pe.xh -= ps_xh;
    pe.xi -= ps_xi;

    const double ps_cod_rate = (ps_xh + ps_xi) * inf.q;           // g/d
    const double ps_n_rate = kin.i_n * ps_xh * inf.q;             // g/d
    const double ps_p_rate = kin.i_p * ps_xh * inf.q;             // g/d
    const double ps_tss_rate = (ps_xh + ps_xi) * inf.q * p.tss_per_cod;

    // ---- wastage: track the target SRT ------------------------------------
    const std::array<double, 4> vol = {p.vol_anaerobic, p.vol_anoxic1, p.vol_anoxic2,
                                       p.vol_aerobic};
    double solids_inventory = 0.0;  // g COD of particulates in the biological train
    for (std::size_t i = 0; i < 4; ++i)
        solids_inventory += vol[i] * next.tanks[i].particulate_cod();

    const TankState& aer0 = next.tanks[static_cast<int>(Tank::Aerobic)];
    const double x_eff_cod = std::min(p.effluent_tss / p.tss_per_cod,
                                      std::max(aer0.particulate_cod(), 0.0));
    const double loss_eff_rate = inf.q * x_eff_cod;  // g/d, effluent solids loss (E ~ Q)
    double waste_rate = 0.0;                         // g COD/d
    if (std::isfinite(p.srt_target_d))
        waste_rate = std::max(0.0, solids_inventory / p.srt_target_d - loss_eff_rate);

    double q_waste = 0.0;
    if (waste_rate > 0.0 && aer0.particulate_cod() > 0.0) {
        const double under_approx = p.sludge_recycle_ratio * inf.q;
        const double feed_flux = (1.0 + p.sludge_recycle_ratio) * inf.q * aer0.particulate_cod();
        const double x_under = std::max((feed_flux - inf.q * x_eff_cod) / under_approx, 1.0);
        q_waste = std::min(waste_rate / x_under, 0.5 * p.sludge_recycle_ratio * inf.q);
    }

    const Flows flows = make_flows(inf.q, q_waste, p);
    fx.effluent_volume = flows.q_eff * dt_control_d;

    // PAC dosing, constant over the interval
    const double pac_solution_rate = action.pac_dose * inf.q;                 // kg/d
    const double pac_pure_rate = pac_solution_rate * p.pac_solution_fraction; // kg/d
    const double chem_p_capacity_rate = p.p_binding * pac_pure_rate * kGramsPerKg;  // g P/d

    // ---- sub-stepped integration ------------------------------------------
    const int nsub = std::max(1, static_cast<int>(std::ceil(dt_control_d / p.euler_substep_d)));
    const double h = dt_control_d / nsub;

    double eff_cod = 0.0, eff_nh4 = 0.0, eff_no3 = 0.0, eff_tn = 0.0, eff_tp = 0.0;  // g
    double waste_cod = 0.0, waste_n = 0.0, waste_p = 0.0;        // g, underflow wastage
    double waste_bio_cod = 0.0, waste_xi_cod = 0.0, waste_ss_cod = 0.0;
    double our_g = 0.0, nitrified_g = 0.0, chem_p_g = 0.0;
    long clamps = 0;

    std::array<TankState, 4> t = next.tanks;
    std::array<TankState, 4> deriv;

    for (int s = 0; s < nsub; ++s) {
        const TankState& an = t[0];
        const TankState& ax1 = t[1];
        const TankState& ax2 = t[2];
        const TankState& aer = t[3];

        // Clarifier split, quasi-steady against the current aerobic state.
        const double x_aer = aer.particulate_cod();
        const double eff_ratio = x_aer > 0.0 ? std::min(x_eff_cod / x_aer, 1.0) : 0.0;
        // Particulate concentration multiplier for the underflow.
        const double under_ratio =
            x_aer > 0.0 ? (flows.q_feed - flows.q_eff * eff_ratio) / flows.q_under : 0.0;

        auto transport = [&](auto get) {
            const double c_in = get(pe);  // primary effluent (InfluentComposition)
            const double c_an = get(an), c_ax1 = get(ax1), c_ax2 = get(ax2), c_aer = get(aer);
            const bool particulate = get.particulate;
            const double c_ras = particulate ? c_aer * under_ratio : c_aer;
            struct {
                double an, ax1, ax2, aer;
            } d{};
            d.an = (flows.q * c_in + (flows.q_an - flows.q) * c_ax1 - flows.q_an * c_an) /
                   p.vol_anaerobic;
            d.ax1 = (flows.q_an * c_an + flows.q_ras * c_ras - flows.q_ax1 * c_ax1) /
                    p.vol_anoxic1;
            d.ax2 = (flows.q_fwd * c_ax1 + (flows.q_ax2 - flows.q_fwd) * c_aer -
                     flows.q_ax2 * c_ax2) /
                    p.vol_anoxic2;
            d.aer = (flows.q_ax2 * c_ax2 - flows.q_ax2 * c_aer) / p.vol_aerobic;
            return d;
        };

        // Field accessors tagged with particulate behaviour at the clarifier.
        struct FieldGet {
            double TankState::* tank_field;
            double InfluentComposition::* inf_field;
            bool particulate;
            double operator()(const TankState& ts) const { return ts.*tank_field; }
            double operator()(const InfluentComposition& ic) const {
                return inf_field ? ic.*inf_field : 0.0;
            }
        };
        static constexpr FieldGet fields[TankState::kNumFields] = {
            {&TankState::ss, &InfluentComposition::ss, false},
            {&TankState::snh, &InfluentComposition::snh, false},
            {&TankState::sno, &InfluentComposition::sno, false},
            {&TankState::spo, &InfluentComposition::spo, false},
            {&TankState::xh, &InfluentComposition::xh, true},
            {&TankState::xa, nullptr, true},
            {&TankState::xi, &InfluentComposition::xi, true},
        };

        for (std::size_t fi = 0; fi < TankState::kNumFields; ++fi) {
            auto d = transport(fields[fi]);
            deriv[0].data()[fi] = d.an;
            deriv[1].data()[fi] = d.ax1;
            deriv[2].data()[fi] = d.ax2;
            deriv[3].data()[fi] = d.aer;
        }

        // Reactions per tank; DO is zero outside the aerobic tank.
        for (std::size_t ti = 0; ti < 4; ++ti) {
            const double dox = ti == 3 ? action.do_setpoint : 0.0;
            const ProcessRates r = process_rates(t[ti], dox, p);
            const double growth = r.growth_aerobic + r.growth_anoxic;
            const double decay = r.decay_h + r.decay_a;
            TankState& d = deriv[ti];
            d.ss += -growth / kin.y_h + (1.0 - kin.f_xi_decay) * decay;
            d.xh += growth - r.decay_h;
            d.xa += kin.y_a * r.nitrification - r.decay_a;
            d.xi += kin.f_xi_decay * decay;
            d.snh += -kin.i_n * (growth + kin.y_a * r.nitrification) - r.nitrification +
                     kin.i_n * decay;
            d.sno += r.nitrification -
                     (1.0 - kin.y_h) / (kDenitCodFactor * kin.y_h) * r.growth_anoxic;
            d.spo += -kin.i_p * (growth + kin.y_a * r.nitrification) + kin.i_p * decay;
            if (ti == 3) {
                our_g += h * p.vol_aerobic *
                         ((1.0 - kin.y_h) / kin.y_h * r.growth_aerobic +
                          kO2PerNitrifiedN / kin.y_a * r.nitrification);
                nitrified_g += h * p.vol_aerobic * r.nitrification;
            }
        }

        // Chemical P precipitation in the aerobic tank.
        {
            TankState& aer_mut = t[3];
            const double cap = aer_mut.spo * p.vol_aerobic / h;  // g/d that would empty the pool
            const double removal_rate = std::min(chem_p_capacity_rate, cap);
            deriv[3].spo -= removal_rate / p.vol_aerobic;
            chem_p_g += h * removal_rate;
        }

        // Effluent and wastage tallies, using the pre-update aerobic state.
        {
            const double xh_e = aer.xh * eff_ratio, xa_e = aer.xa * eff_ratio,
                         xi_e = aer.xi * eff_ratio;
            eff_cod += h * flows.q_eff * (aer.ss + xh_e + xa_e + xi_e);
            eff_nh4 += h * flows.q_eff * aer.snh;
            eff_no3 += h * flows.q_eff * aer.sno;
            eff_tn += h * flows.q_eff *
                      (aer.snh + aer.sno + kin.i_n * (xh_e + xa_e) + raw.inert_soluble_n);
            eff_tp += h * flows.q_eff * (aer.spo + kin.i_p * (xh_e + xa_e));

            if (flows.q_waste > 0.0) {
                const double xh_u = aer.xh * under_ratio, xa_u = aer.xa * under_ratio,
                             xi_u = aer.xi * under_ratio;
                const double bio_u = xh_u + xa_u;
                waste_bio_cod += h * flows.q_waste * bio_u;
                waste_xi_cod += h * flows.q_waste * xi_u;
                waste_ss_cod += h * flows.q_waste * aer.ss;
                waste_cod += h * flows.q_waste * (aer.ss + bio_u + xi_u);
                waste_n += h * flows.q_waste *
                           (aer.snh + aer.sno + kin.i_n * bio_u + raw.inert_soluble_n);
                waste_p += h * flows.q_waste * (aer.spo + kin.i_p * bio_u);
            }
        }

        // Euler update with clamping and a finiteness check.
        for (std::size_t ti = 0; ti < 4; ++ti) {
            for (std::size_t fi = 0; fi < TankState::kNumFields; ++fi) {
                double& c = t[ti].data()[fi];
                c += h * deriv[ti].data()[fi];
                if (!std::isfinite(c))
                    throw std::runtime_error(
                        std::string("plant step: non-finite state in tank ") +
                        std::to_string(ti) + " variable " + TankState::field_name(fi));
                if (c < 0.0) {
                    c = 0.0;
                    ++clamps;
                }
            }
        }
    }

    next.tanks = t;
    next.elapsed_d += dt_control_d;
    next.clamp_total += clamps;

    // ---- sludge line --------------------------------------------------------
    const double ps_cod = ps_cod_rate * dt_control_d;  // g per interval
    const double feed_bio_cod = ps_xh * inf.q * dt_control_d + waste_bio_cod;
    const double feed_xi_cod = ps_xi * inf.q * dt_control_d + waste_xi_cod;
    const double feed_ss_cod = waste_ss_cod;

    const double chem_sludge_kg =
        p.chem_sludge_per_pac * pac_pure_rate * dt_control_d +
        p.chem_sludge_per_p * chem_p_g / kGramsPerKg;
    const double feed_tss_kg =
        (feed_bio_cod + feed_xi_cod) * p.tss_per_cod / kGramsPerKg + chem_sludge_kg;

    fx.fecl3_used_kg = p.fecl3_dose_kg_per_kg_tss * feed_tss_kg;
    fx.pac_pure_used_kg = pac_pure_rate * dt_control_d;

    const double degradable_cod = feed_bio_cod + feed_ss_cod;  // g
    const double destroyed_cod = p.digester.vs_destruction * degradable_cod;
    fx.digested_cod_kg = destroyed_cod / kGramsPerKg;
    const double ch4_volume = p.digester.ch4_yield * fx.digested_cod_kg;  // m3
    const double fugitive_volume = p.digester.fugitive_ch4 * ch4_volume;
    fx.process_ch4_kg = fugitive_volume * p.digester.ch4_density;
    fx.biogas_electricity_kwh =
        (ch4_volume - fugitive_volume) * p.chp.ch4_lhv * p.chp.electrical_efficiency;

    const double cake_bio_cod = feed_bio_cod * (1.0 - p.digester.vs_destruction);
    fx.cake_dry_tss_kg = (cake_bio_cod + feed_xi_cod) * p.tss_per_cod / kGramsPerKg +
                         chem_sludge_kg + fx.fecl3_used_kg;
    fx.cake_mass_kg = fx.cake_dry_tss_kg / p.dewatered_solids;

    fx.primary_sludge_cod_kg = ps_cod / kGramsPerKg;
    fx.waste_sludge_cod_kg = waste_cod / kGramsPerKg;
    fx.sludge_out_cod_kg = (ps_cod + waste_cod) / kGramsPerKg - fx.digested_cod_kg;
    fx.sludge_out_n_kg = (ps_n_rate * dt_control_d + waste_n) / kGramsPerKg;
    fx.sludge_out_p_kg =
        (ps_p_rate * dt_control_d + waste_p) / kGramsPerKg + chem_p_g / kGramsPerKg;

    // ---- gaseous N2O from nitrification -------------------------------------
    fx.n_nitrified_kg = nitrified_g / kGramsPerKg;
    fx.process_n2o_kg = n2o_fraction(action.do_setpoint, p) * fx.n_nitrified_kg * kN2oPerN;
    fx.p_chem_removed_kg = chem_p_g / kGramsPerKg;

    // ---- energies ------------------------------------------------------------
    fx.our_total_kg = our_g / kGramsPerKg;
    fx.aeration_energy_kwh = aeration_energy(fx.our_total_kg, action.do_setpoint, p);

    const double q_ps = ps_tss_rate / p.primary_sludge_tss;  // m3/d
    const double thickener_feed = q_ps + flows.q_waste;
    const double dewatering_feed =
        feed_tss_kg * kGramsPerKg / p.thickened_tss / dt_control_d;  // m3/d
    const double to_m3s = 1.0 / 86400.0;
    const double pump_kw = pump_energy((q_ps + flows.q_waste) * to_m3s, p) +
                           pump_energy(thickener_feed * to_m3s, p) +
                           pump_energy(dewatering_feed * to_m3s, p);
    fx.pump_energy_kwh = pump_kw * dt_control_d * kHoursPerDay;

    fx.other_energy_kwh = (p.mixing_w_per_m3 * p.total_volume() / 1000.0 + p.fixed_other_kw) *
                          dt_control_d * kHoursPerDay;

    // ---- effluent assembly ----------------------------------------------------
    fx.eff_cod_kg = eff_cod / kGramsPerKg;
    fx.eff_bod_kg = p.bod_per_cod * fx.eff_cod_kg;
    fx.eff_nh4_kg = eff_nh4 / kGramsPerKg;
    fx.eff_no3_kg = eff_no3 / kGramsPerKg;
    fx.eff_no2_kg = 0.0;
    fx.eff_tn_kg = eff_tn / kGramsPerKg;
    fx.eff_tp_kg = eff_tp / kGramsPerKg;

    const double ev = fx.effluent_volume > 0.0 ? fx.effluent_volume : 1.0;
    fx.effluent.cod = fx.eff_cod_kg * kGramsPerKg / ev;
    fx.effluent.bod = fx.eff_bod_kg * kGramsPerKg / ev;
    fx.effluent.nh4n = fx.eff_nh4_kg * kGramsPerKg / ev;
    fx.effluent.no3n = fx.eff_no3_kg * kGramsPerKg / ev;
    fx.effluent.no2n = 0.0;
    fx.effluent.tn = fx.eff_tn_kg * kGramsPerKg / ev;
    fx.effluent.tp = fx.eff_tp_kg * kGramsPerKg / ev;

    const double loss_rate = loss_eff_rate + waste_cod / dt_control_d;
    fx.realized_srt_d = loss_rate > 0.0 ? solids_inventory / loss_rate
                                        : std::numeric_limits<double>::infinity();
    fx.clamp_events = clamps;

    return {next, fx};
}

WarmupResult warmup(const PlantParams& p, const influent::InfluentConfig& cfg,
                    const Action& action, double warmup_days, double dt_control_d) {
    PlantState st;
    const int intervals = static_cast<int>(std::llround(warmup_days / dt_control_d));
    const int per_day = static_cast<int>(std::llround(1.0 / dt_control_d));
    PlantState day_before = st;
    for (int i = 0; i < intervals; ++i) {
        if (i == intervals - per_day) day_before = st;
        const auto rec = influent::generate_influent(cfg, i * dt_control_d);
        st = step(st, rec, action, dt_control_d, p).first;
    }

    WarmupResult res;
    res.state = st;
    double max_rel = 0.0;
    for (std::size_t ti = 0; ti < 4; ++ti) {
        for (std::size_t fi = 0; fi < TankState::kNumFields; ++fi) {
            const double before = day_before.tanks[ti].data()[fi];
            const double after = st.tanks[ti].data()[fi];
            const double rel = std::abs(after - before) / std::max(std::abs(before), 1e-6);
            max_rel = std::max(max_rel, rel);
        }
    }
    res.max_rel_change = max_rel;
    res.quasi_steady = max_rel < 0.02;
    return res;
}

}  // namespace wwtp::plant
