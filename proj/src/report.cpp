#include "wwtp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wwtp::report {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::vector<std::string>& header) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty csv: " + path);
    header = split_csv_line(line);
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Stat {
    double mean = 0.0;
    double stdev = 0.0;
};

Stat stat_of(const std::vector<double>& xs) {
    Stat s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

json stat_json(const Stat& s) { return json{{"mean", s.mean}, {"std", s.stdev}}; }

const scenarios::ScenarioResult* find_baseline(
    const std::vector<scenarios::ScenarioResult>& results) {
    for (const auto& r : results)
        if (r.spec.kind == scenarios::Kind::Baseline) return &r;
    throw std::invalid_argument("summary: baseline scenario result missing");
}

}  // namespace

void write_episode_csv(const std::string& path, const scenarios::EpisodeLog& log) {
    auto f = open_out(path);
    f << "t_days,do,dose,treated_m3,eff_cod,eff_bod,eff_nh4n,eff_no3n,eff_no2n,eff_tn,"
         "eff_tp,violation,energy_total,energy_aeration,energy_pumps,energy_chemicals,"
         "energy_other,energy_biogas,cost_total,cost_energy,cost_chemicals,cost_transport,"
         "cost_landfill,cost_misc,cost_biogas,ep_total,ep_tp,ep_cod,ep_nh4,ep_no3,ep_no2,"
         "ghg_total,ghg_process,ghg_energy,ghg_material,ghg_biogas\n";
    for (const auto& r : log.rows) {
        const double vals[] = {
            r.t,
            r.action.do_setpoint,
            r.action.pac_dose,
            r.treated_m3,
            r.eff.cod,
            r.eff.bod,
            r.eff.nh4n,
            r.eff.no3n,
            r.eff.no2n,
            r.eff.tn,
            r.eff.tp,
            r.violation ? 1.0 : 0.0,
            r.iv.energy_total,
            r.iv.energy.aeration,
            r.iv.energy.pumps,
            r.iv.energy.chemicals,
            r.iv.energy.other,
            r.iv.energy.biogas,
            r.iv.cost_total,
            r.iv.cost.energy,
            r.iv.cost.chemicals,
            r.iv.cost.transport,
            r.iv.cost.landfill,
            r.iv.cost.misc,
            r.iv.cost.biogas,
            r.iv.ep_total,
            r.iv.ep.tp,
            r.iv.ep.cod,
            r.iv.ep.nh4,
            r.iv.ep.no3,
            r.iv.ep.no2,
            r.iv.ghg_total,
            r.iv.ghg.process,
            r.iv.ghg.energy,
            r.iv.ghg.material,
            r.iv.ghg.biogas,
        };
        for (std::size_t i = 0; i < std::size(vals); ++i)
            f << (i ? "," : "") << fmt(vals[i]);
        f << '\n';
    }
}

scenarios::EpisodeLog read_episode_csv(const std::string& path) {
    std::vector<std::string> header;
    const auto rows = read_numeric_csv(path, header);
    if (header.size() != 36) throw std::runtime_error("episode csv: unexpected column count");
    scenarios::EpisodeLog log;
    for (const auto& v : rows) {
        if (v.size() != 36) throw std::runtime_error("episode csv: short row");
        scenarios::IntervalLog r;
        std::size_t i = 0;
        r.t = v[i++];
        r.action.do_setpoint = v[i++];
        r.action.pac_dose = v[i++];
        r.treated_m3 = v[i++];
        r.eff.cod = v[i++];
        r.eff.bod = v[i++];
        r.eff.nh4n = v[i++];
        r.eff.no3n = v[i++];
        r.eff.no2n = v[i++];
        r.eff.tn = v[i++];
        r.eff.tp = v[i++];
        r.violation = v[i++] != 0.0;
        r.iv.energy_total = v[i++];
        r.iv.energy.aeration = v[i++];
        r.iv.energy.pumps = v[i++];
        r.iv.energy.chemicals = v[i++];
        r.iv.energy.other = v[i++];
        r.iv.energy.biogas = v[i++];
        r.iv.cost_total = v[i++];
        r.iv.cost.energy = v[i++];
        r.iv.cost.chemicals = v[i++];
        r.iv.cost.transport = v[i++];
        r.iv.cost.landfill = v[i++];
        r.iv.cost.misc = v[i++];
        r.iv.cost.biogas = v[i++];
        r.iv.ep_total = v[i++];
        r.iv.ep.tp = v[i++];
        r.iv.ep.cod = v[i++];
        r.iv.ep.nh4 = v[i++];
        r.iv.ep.no3 = v[i++];
        r.iv.ep.no2 = v[i++];
        r.iv.ghg_total = v[i++];
        r.iv.ghg.process = v[i++];
        r.iv.ghg.energy = v[i++];
        r.iv.ghg.material = v[i++];
        r.iv.ghg.biogas = v[i++];
        log.rows.push_back(std::move(r));
    }
    return log;
}

void write_train_log_csv(const std::string& path,
                         const std::vector<marl::TrainLogRow>& rows) {
    auto f = open_out(path);
    f << "step,reward,do,dose,critic_loss_1,critic_loss_2,E,EP,GHG,cost,violation\n";
    for (const auto& r : rows) {
        f << r.step << ',' << fmt(r.reward) << ',' << fmt(r.do_setpoint) << ','
          << fmt(r.dose) << ',' << fmt(r.critic_loss_1) << ',' << fmt(r.critic_loss_2)
          << ',' << fmt(r.energy) << ',' << fmt(r.ep) << ',' << fmt(r.ghg) << ','
          << fmt(r.cost) << ',' << r.violation << '\n';
    }
}

void write_influent_csv(const std::string& path,
                        const std::vector<influent::InfluentRecord>& records) {
    auto f = open_out(path);
    f << "t_days,Q_m3d,COD,TN,NH3N,TP\n";
    for (const auto& r : records)
        f << fmt(r.t) << ',' << fmt(r.q) << ',' << fmt(r.cod) << ',' << fmt(r.tn) << ','
          << fmt(r.nh3n) << ',' << fmt(r.tp) << '\n';
}

namespace {
constexpr const char* kFluxHeader =
    "t_days,treated_m3,effluent_m3,eff_cod_kg,eff_bod_kg,eff_nh4_kg,eff_no3_kg,"
    "eff_no2_kg,eff_tn_kg,eff_tp_kg,our_kg,aeration_kwh,pump_kwh,other_kwh,biogas_kwh,"
    "fecl3_kg,pac_pure_kg,cake_kg,process_n2o_kg,process_ch4_kg";
}

void write_fluxes_csv(const std::string& path,
                      const std::vector<std::pair<double, plant::StepFluxes>>& rows) {
    auto f = open_out(path);
    f << kFluxHeader << '\n';
    for (const auto& [t, fx] : rows) {
        const double vals[] = {t,
                               fx.treated_volume,
                               fx.effluent_volume,
                               fx.eff_cod_kg,
                               fx.eff_bod_kg,
                               fx.eff_nh4_kg,
                               fx.eff_no3_kg,
                               fx.eff_no2_kg,
                               fx.eff_tn_kg,
                               fx.eff_tp_kg,
                               fx.our_total_kg,
                               fx.aeration_energy_kwh,
                               fx.pump_energy_kwh,
                               fx.other_energy_kwh,
                               fx.biogas_electricity_kwh,
                               fx.fecl3_used_kg,
                               fx.pac_pure_used_kg,
                               fx.cake_mass_kg,
                               fx.process_n2o_kg,
                               fx.process_ch4_kg};
        for (std::size_t i = 0; i < std::size(vals); ++i)
            f << (i ? "," : "") << fmt(vals[i]);
        f << '\n';
    }
}

std::vector<std::pair<double, plant::StepFluxes>> read_fluxes_csv(const std::string& path) {
    std::vector<std::string> header;
    const auto rows = read_numeric_csv(path, header);
    if (header.size() != 20) throw std::runtime_error("fluxes csv: unexpected column count");
    std::vector<std::pair<double, plant::StepFluxes>> out;
    for (const auto& v : rows) {
        if (v.size() != 20) throw std::runtime_error("fluxes csv: short row");
        plant::StepFluxes fx;
        std::size_t i = 0;
        const double t = v[i++];
        fx.treated_volume = v[i++];
        fx.effluent_volume = v[i++];
        fx.eff_cod_kg = v[i++];
        fx.eff_bod_kg = v[i++];
        fx.eff_nh4_kg = v[i++];
        fx.eff_no3_kg = v[i++];
        fx.eff_no2_kg = v[i++];
        fx.eff_tn_kg = v[i++];
        fx.eff_tp_kg = v[i++];
        fx.our_total_kg = v[i++];
        fx.aeration_energy_kwh = v[i++];
        fx.pump_energy_kwh = v[i++];
        fx.other_energy_kwh = v[i++];
        fx.biogas_electricity_kwh = v[i++];
        fx.fecl3_used_kg = v[i++];
        fx.pac_pure_used_kg = v[i++];
        fx.cake_mass_kg = v[i++];
        fx.process_n2o_kg = v[i++];
        fx.process_ch4_kg = v[i++];
        out.emplace_back(t, fx);
    }
    return out;
}

void write_summary_json(const std::string& path,
                        const std::vector<scenarios::ScenarioResult>& results) {
    const auto* base = find_baseline(results);
    const scenarios::Cumulative base_cum = scenarios::cumulative(base->baseline_eval);

    json out;
    out["scenarios"] = json::array();
    for (const auto& res : results) {
        json js;
        js["name"] = res.spec.name;
        js["standard"] = res.spec.standard.name;

        std::vector<const scenarios::EpisodeLog*> logs;
        std::vector<std::uint64_t> seeds;
        if (res.spec.trains) {
            for (const auto& sr : res.seed_runs) {
                logs.push_back(&sr.eval);
                seeds.push_back(sr.seed);
            }
        } else {
            logs.push_back(&res.baseline_eval);
        }
        js["seeds"] = seeds;

        auto gather = [&](auto fn) {
            std::vector<double> xs;
            xs.reserve(logs.size());
            for (const auto* l : logs) xs.push_back(fn(*l));
            return stat_of(xs);
        };
        js["mean_do"] = stat_json(gather([](const auto& l) { return l.mean_do(); }));
        js["mean_dose"] = stat_json(gather([](const auto& l) { return l.mean_dose(); }));
        js["violation_rate"] =
            stat_json(gather([](const auto& l) { return l.violation_rate(); }));
        js["per_m3"] = {
            {"energy_kwh", stat_json(gather([](const auto& l) { return l.per_m3_energy(); }))},
            {"cost_cny", stat_json(gather([](const auto& l) { return l.per_m3_cost(); }))},
            {"ep_kgpo4", stat_json(gather([](const auto& l) { return l.per_m3_ep(); }))},
            {"ghg_kgco2", stat_json(gather([](const auto& l) { return l.per_m3_ghg(); }))},
        };

        auto delta_stat = [&](double scenarios::Cumulative::* field) {
            std::vector<double> xs;
            for (const auto* l : logs) {
                const scenarios::Cumulative c = scenarios::cumulative(*l);
                xs.push_back(c.*field - base_cum.*field);
            }
            return stat_json(stat_of(xs));
        };
        js["cumulative_delta_vs_baseline"] = {
            {"energy_kwh", delta_stat(&scenarios::Cumulative::energy_kwh)},
            {"cost_cny", delta_stat(&scenarios::Cumulative::cost_cny)},
            {"ep_kgpo4", delta_stat(&scenarios::Cumulative::ep_kg)},
            {"ghg_kgco2", delta_stat(&scenarios::Cumulative::ghg_kg)},
        };
        out["scenarios"].push_back(std::move(js));
    }
    auto f = open_out(path);
    f << out.dump(2) << '\n';
}

void write_table3_csv(const std::string& path,
                      const std::vector<scenarios::ScenarioResult>& results) {
    const auto* base = find_baseline(results);
    auto f = open_out(path);
    f << "scenario,energy_kwh_mean,energy_kwh_std,cost_cny_mean,cost_cny_std,"
         "ep_kgpo4_mean,ep_kgpo4_std,ghg_kgco2_mean,ghg_kgco2_std\n";
    for (const auto& res : results) {
        std::vector<double> de, dc, dp, dg;
        if (res.spec.trains) {
            for (const auto& sr : res.seed_runs) {
                const auto d = scenarios::cumulative_delta(sr.eval, base->baseline_eval);
                de.push_back(d.energy_kwh);
                dc.push_back(d.cost_cny);
                dp.push_back(d.ep_kg);
                dg.push_back(d.ghg_kg);
            }
        } else {
            de.push_back(0.0);
            dc.push_back(0.0);
            dp.push_back(0.0);
            dg.push_back(0.0);
        }
        const Stat se = stat_of(de), sc = stat_of(dc), sp = stat_of(dp), sg = stat_of(dg);
        f << res.spec.name << ',' << fmt(se.mean) << ',' << fmt(se.stdev) << ','
          << fmt(sc.mean) << ',' << fmt(sc.stdev) << ',' << fmt(sp.mean) << ','
          << fmt(sp.stdev) << ',' << fmt(sg.mean) << ',' << fmt(sg.stdev) << '\n';
    }
}

void write_breakdown_csv(const std::string& path,
                         const std::vector<scenarios::ScenarioResult>& results) {
    auto f = open_out(path);
    f << "scenario,indicator,component,share_pct\n";
    for (const auto& res : results) {
        // Average the per-seed breakdowns; the baseline has a single episode.
        std::vector<scenarios::BreakdownRow> total;
        std::size_t count = 0;
        auto add = [&](const scenarios::EpisodeLog& log) {
            const auto rows = scenarios::component_breakdown(log);
            if (total.empty()) total = rows;
            else
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    total[i].share_pct += rows[i].share_pct;
                    total[i].defined = total[i].defined && rows[i].defined;
                }
            ++count;
        };
        if (res.spec.trains) {
            for (const auto& sr : res.seed_runs) add(sr.eval);
        } else {
            add(res.baseline_eval);
        }
        for (const auto& row : total) {
            f << res.spec.name << ',' << row.indicator << ',' << row.component << ',';
            if (row.defined && count > 0)
                f << fmt(row.share_pct / static_cast<double>(count));
            else
                f << "nan";
            f << '\n';
        }
    }
}

void write_impact_json(const std::string& path, const impacts::ImpactVector& iv) {
    json j;
    j["energy_kwh_m3"] = {{"total", iv.energy_total},   {"aeration", iv.energy.aeration},
                          {"pumps", iv.energy.pumps},   {"chemicals", iv.energy.chemicals},
                          {"other", iv.energy.other},   {"biogas", iv.energy.biogas}};
    j["cost_cny_m3"] = {{"total", iv.cost_total},       {"energy", iv.cost.energy},
                        {"chemicals", iv.cost.chemicals}, {"transport", iv.cost.transport},
                        {"landfill", iv.cost.landfill}, {"misc", iv.cost.misc},
                        {"biogas", iv.cost.biogas}};
    j["ep_kgpo4_m3"] = {{"total", iv.ep_total}, {"tp", iv.ep.tp},   {"cod", iv.ep.cod},
                        {"nh4", iv.ep.nh4},     {"no3", iv.ep.no3}, {"no2", iv.ep.no2}};
    j["ghg_kgco2_m3"] = {{"total", iv.ghg_total},       {"process", iv.ghg.process},
                         {"energy", iv.ghg.energy},     {"material", iv.ghg.material},
                         {"biogas", iv.ghg.biogas}};
    auto f = open_out(path);
    f << j.dump(2) << '\n';
}

void write_impact_csv(const std::string& path, const impacts::ImpactVector& iv) {
    auto f = open_out(path);
    f << "indicator,component,value\n";
    const struct {
        const char* ind;
        const char* comp;
        double v;
    } rows[] = {
        {"energy", "total", iv.energy_total},   {"energy", "aeration", iv.energy.aeration},
        {"energy", "pumps", iv.energy.pumps},   {"energy", "chemicals", iv.energy.chemicals},
        {"energy", "other", iv.energy.other},   {"energy", "biogas", iv.energy.biogas},
        {"cost", "total", iv.cost_total},       {"cost", "energy", iv.cost.energy},
        {"cost", "chemicals", iv.cost.chemicals}, {"cost", "transport", iv.cost.transport},
        {"cost", "landfill", iv.cost.landfill}, {"cost", "misc", iv.cost.misc},
        {"cost", "biogas", iv.cost.biogas},     {"ep", "total", iv.ep_total},
        {"ep", "tp", iv.ep.tp},                 {"ep", "cod", iv.ep.cod},
        {"ep", "nh4", iv.ep.nh4},               {"ep", "no3", iv.ep.no3},
        {"ep", "no2", iv.ep.no2},               {"ghg", "total", iv.ghg_total},
        {"ghg", "process", iv.ghg.process},     {"ghg", "energy", iv.ghg.energy},
        {"ghg", "material", iv.ghg.material},   {"ghg", "biogas", iv.ghg.biogas},
    };
    for (const auto& r : rows) f << r.ind << ',' << r.comp << ',' << fmt(r.v) << '\n';
}

void write_bounds_json(const std::string& path, const impacts::NormalizationBounds& b,
                       int samples, std::uint64_t seed) {
    json j;
    auto range = [](const impacts::Range& r) {
        return json{{"min", r.min}, {"max", r.max}};
    };
    j["samples"] = samples;
    j["seed"] = seed;
    j["energy_kwh_m3"] = range(b.energy);
    j["cost_cny_m3"] = range(b.cost);
    j["ep_kgpo4_m3"] = range(b.ep);
    j["ghg_kgco2_m3"] = range(b.ghg);
    auto f = open_out(path);
    f << j.dump(2) << '\n';
}

impacts::NormalizationBounds read_bounds_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    json j;
    f >> j;
    impacts::NormalizationBounds b;
    auto range = [&](const char* key) {
        impacts::Range r;
        r.min = j.at(key).at("min").get<double>();
        r.max = j.at(key).at("max").get<double>();
        r.set = true;
        return r;
    };
    b.energy = range("energy_kwh_m3");
    b.cost = range("cost_cny_m3");
    b.ep = range("ep_kgpo4_m3");
    b.ghg = range("ghg_kgco2_m3");
    return b;
}

}  // namespace wwtp::report
