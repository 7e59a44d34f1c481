// Command-line entry point: influent export, plant simulate, impacts assess,
// bounds sample, train, evaluate, scenarios run, report.

#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "config.hpp"
#include "wwtp/report.hpp"
#include "wwtp/serialize.hpp"

namespace fs = std::filesystem;
using namespace wwtp;

namespace {

fs::path ensure_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void warn_if_not_steady(const env::ControlEnv& environment) {
    if (environment.warmup_max_rel_change() >= 0.02)
        std::cerr << "warning: warm-up not quasi-steady (max relative change "
                  << environment.warmup_max_rel_change() << " over the final day)\n";
}

int cmd_influent_export(const cli::RunConfig& cfg, double horizon, double dt) {
    const auto series = influent::influent_series(cfg.run.env.influent, horizon, dt);
    const auto out = ensure_out(cfg.out_dir);
    report::write_influent_csv((out / "influent.csv").string(), series);
    std::cout << "wrote " << (out / "influent.csv").string() << " (" << series.size()
              << " records)\n";
    return 0;
}

int cmd_plant_simulate(const cli::RunConfig& cfg, double days, double dose, double dox) {
    env::EnvConfig ec = cfg.run.env;
    ec.warmup_action = plant::Action{dox, dose};
    env::ControlEnv environment(ec);
    environment.reset();
    warn_if_not_steady(environment);

    std::vector<std::pair<double, plant::StepFluxes>> rows;
    const int n = static_cast<int>(std::llround(days / ec.dt_control_d));
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = environment.time_d();
        const auto outcome = environment.step(plant::Action{dox, dose});
        rows.emplace_back(t, outcome.fluxes);
    }
    const auto out = ensure_out(cfg.out_dir);
    report::write_fluxes_csv((out / "fluxes.csv").string(), rows);
    std::cout << "wrote " << (out / "fluxes.csv").string() << " (" << rows.size()
              << " intervals)\n";
    return 0;
}

int cmd_impacts_assess(const cli::RunConfig& cfg, const std::string& fluxes_path) {
    const auto rows = report::read_fluxes_csv(fluxes_path);
    plant::StepFluxes total;
    for (const auto& [t, fx] : rows) {
        total.treated_volume += fx.treated_volume;
        total.effluent_volume += fx.effluent_volume;
        total.eff_cod_kg += fx.eff_cod_kg;
        total.eff_bod_kg += fx.eff_bod_kg;
        total.eff_nh4_kg += fx.eff_nh4_kg;
        total.eff_no3_kg += fx.eff_no3_kg;
        total.eff_no2_kg += fx.eff_no2_kg;
        total.eff_tn_kg += fx.eff_tn_kg;
        total.eff_tp_kg += fx.eff_tp_kg;
        total.our_total_kg += fx.our_total_kg;
        total.aeration_energy_kwh += fx.aeration_energy_kwh;
        total.pump_energy_kwh += fx.pump_energy_kwh;
        total.other_energy_kwh += fx.other_energy_kwh;
        total.biogas_electricity_kwh += fx.biogas_electricity_kwh;
        total.fecl3_used_kg += fx.fecl3_used_kg;
        total.pac_pure_used_kg += fx.pac_pure_used_kg;
        total.cake_mass_kg += fx.cake_mass_kg;
        total.process_n2o_kg += fx.process_n2o_kg;
        total.process_ch4_kg += fx.process_ch4_kg;
    }
    const auto iv = impacts::assess(total, cfg.run.env.factors, cfg.run.env.costs);
    const auto out = ensure_out(cfg.out_dir);
    report::write_impact_json((out / "impact.json").string(), iv);
    report::write_impact_csv((out / "impact.csv").string(), iv);
    std::cout << "energy " << iv.energy_total << " kWh/m3, cost " << iv.cost_total
              << " CNY/m3, EP " << iv.ep_total << " kg PO4-eq/m3, GHG " << iv.ghg_total
              << " kg CO2-eq/m3\n";
    return 0;
}

int cmd_bounds_sample(const cli::RunConfig& cfg, int n, std::uint64_t seed) {
    env::ControlEnv environment(cfg.run.env);
    const auto sample = env::sample_normalization_bounds(environment, n, seed);
    const auto out = ensure_out(cfg.out_dir);
    report::write_bounds_json((out / "bounds.json").string(), sample.bounds, n, seed);
    std::cout << "wrote " << (out / "bounds.json").string() << '\n';
    return 0;
}

int cmd_train(const cli::RunConfig& cfg, const std::string& scenario_name,
              std::uint64_t seed) {
    const auto spec = scenarios::scenario_by_name(scenario_name);
    if (!spec.trains) {
        std::cerr << "scenario '" << scenario_name << "' has a fixed policy; nothing to train\n";
        return 1;
    }
    marl::TrainConfig tc = cfg.run.train_template;
    tc.seed = seed;
    const auto rc = scenarios::reward_for(spec, cfg.run.reward_template);

    env::ControlEnv environment(cfg.run.env);
    const auto result = marl::train(environment, rc, tc);

    const auto out = ensure_out(cfg.out_dir);
    report::write_train_log_csv((out / "train_log.csv").string(), result.log);
    marl::save_agents((out / "agents.json").string(), result.agents, result.bounds, tc);
    report::write_bounds_json((out / "bounds.json").string(), result.bounds,
                              tc.bounds_samples, seed);
    std::cout << "wrote " << (out / "train_log.csv").string() << " and "
              << (out / "agents.json").string() << '\n';
    return 0;
}

int cmd_evaluate(const cli::RunConfig& cfg, const std::string& scenario_name,
                 const std::string& agents_path) {
    const auto spec = scenarios::scenario_by_name(scenario_name);
    const auto loaded = marl::load_agents(agents_path);
    auto log = scenarios::run_trained(spec, cfg.run.env, loaded.agents, cfg.run.eval_days);
    const auto out = ensure_out(cfg.out_dir);
    report::write_episode_csv((out / "eval.csv").string(), log);
    std::cout << "wrote " << (out / "eval.csv").string() << "; mean DO " << log.mean_do()
              << ", mean dose " << log.mean_dose() << ", violation rate "
              << log.violation_rate() << '\n';
    return 0;
}

int cmd_scenarios_run(const cli::RunConfig& cfg, bool all,
                      std::vector<std::string> names) {
    if (all) {
        names.clear();
        for (const auto& s : scenarios::all_scenarios()) names.push_back(s.name);
    }
    if (names.empty()) {
        std::cerr << "scenarios run: pass --all or --scenario <name>\n";
        return 1;
    }
    // The baseline is always needed for the delta table.
    if (std::find(names.begin(), names.end(), "baseline") == names.end())
        names.insert(names.begin(), "baseline");

    std::vector<scenarios::ScenarioSpec> specs;
    specs.reserve(names.size());
    for (const auto& n : names) specs.push_back(scenarios::scenario_by_name(n));

    const auto results = scenarios::run_all(cfg.run, specs);

    const auto out = ensure_out(cfg.out_dir);
    for (const auto& res : results) {
        const fs::path sdir = out / res.spec.name;
        fs::create_directories(sdir);
        if (res.spec.trains) {
            for (const auto& sr : res.seed_runs) {
                const fs::path seed_dir = sdir / ("seed" + std::to_string(sr.seed));
                fs::create_directories(seed_dir);
                report::write_train_log_csv((seed_dir / "train_log.csv").string(),
                                            sr.train.log);
                marl::save_agents((seed_dir / "agents.json").string(), sr.train.agents,
                                  sr.train.bounds, cfg.run.train_template);
                report::write_episode_csv((seed_dir / "eval.csv").string(), sr.eval);
            }
        } else {
            report::write_episode_csv((sdir / "eval.csv").string(), res.baseline_eval);
        }
    }
    report::write_summary_json((out / "summary.json").string(), results);
    report::write_table3_csv((out / "table3_analog.csv").string(), results);
    report::write_breakdown_csv((out / "breakdown.csv").string(), results);
    std::cout << "wrote scenario logs and summaries under " << out.string() << '\n';
    return 0;
}

int cmd_report(const cli::RunConfig& cfg) {
    // Rebuild the summary artifacts from episode logs already on disk.
    const fs::path out(cfg.out_dir);
    std::vector<scenarios::ScenarioResult> results;
    for (const auto& spec : scenarios::all_scenarios()) {
        const fs::path sdir = out / spec.name;
        if (!fs::exists(sdir)) continue;
        scenarios::ScenarioResult res;
        res.spec = spec;
        if (spec.trains) {
            for (const auto& entry : fs::directory_iterator(sdir)) {
                if (!entry.is_directory()) continue;
                const std::string dirname = entry.path().filename().string();
                if (dirname.rfind("seed", 0) != 0) continue;
                scenarios::SeedResult sr;
                sr.seed = std::strtoull(dirname.c_str() + 4, nullptr, 10);
                sr.eval = report::read_episode_csv((entry.path() / "eval.csv").string());
                sr.eval.scenario = spec.name;
                sr.eval.seed = sr.seed;
                res.seed_runs.push_back(std::move(sr));
            }
            std::sort(res.seed_runs.begin(), res.seed_runs.end(),
                      [](const auto& a, const auto& b) { return a.seed < b.seed; });
            if (res.seed_runs.empty()) continue;
        } else {
            res.baseline_eval = report::read_episode_csv((sdir / "eval.csv").string());
            res.baseline_eval.scenario = spec.name;
        }
        results.push_back(std::move(res));
    }
    if (results.empty()) {
        std::cerr << "report: no episode logs under " << out.string() << '\n';
        return 1;
    }
    report::write_summary_json((out / "summary.json").string(), results);
    report::write_table3_csv((out / "table3_analog.csv").string(), results);
    report::write_breakdown_csv((out / "breakdown.csv").string(), results);
    std::cout << "rebuilt summaries under " << out.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent DO/dosage optimization on an activated-sludge plant surrogate"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    cli::attach_options(app, cfg);
    app.add_option("--out", cfg.out_dir, "output directory [path]");
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "random seed [-]");

    // influent export
    auto* influent_cmd = app.add_subcommand("influent", "influent time-series tools");
    auto* influent_export = influent_cmd->add_subcommand("export", "write the series as CSV");
    double horizon = 10.0, dt = 1.0 / 24.0;
    influent_export->add_option("--horizon", horizon, "series length [d]");
    influent_export->add_option("--dt", dt, "sampling interval [d]");

    // plant simulate
    auto* plant_cmd = app.add_subcommand("plant", "plant surrogate tools");
    auto* plant_sim = plant_cmd->add_subcommand(
        "simulate", "constant-action run after warm-up, per-interval fluxes as CSV");
    double sim_days = 10.0;
    plant::Action sim_action;  // baseline defaults
    plant_sim->add_option("--days", sim_days, "simulated horizon after warm-up [d]");
    plant_sim->add_option("--do", sim_action.do_setpoint, "DO set-point [g O2/m3]");
    plant_sim->add_option("--dose", sim_action.pac_dose, "PAC dose [kg solution/m3]");

    // impacts assess
    auto* impacts_cmd = app.add_subcommand("impacts", "impact accounting tools");
    auto* impacts_assess = impacts_cmd->add_subcommand("assess", "assess a fluxes CSV");
    std::string fluxes_path;
    impacts_assess->add_option("fluxes", fluxes_path, "fluxes CSV path [file]")->required();

    // bounds sample
    auto* bounds_cmd = app.add_subcommand("bounds", "normalization bounds tools");
    auto* bounds_sample = bounds_cmd->add_subcommand(
        "sample", "Monte-Carlo min/max of each indicator under uniform random actions");
    int bounds_n = 10000;
    bounds_sample->add_option("--n", bounds_n, "sample count [control intervals]");

    // train
    auto* train_cmd = app.add_subcommand("train", "train the two agents for one scenario");
    std::string scenario_name = "lca-ia";
    train_cmd->add_option("--scenario", scenario_name,
                          "scenario name (lca-ia, lca-ib, lca-sw, cost) [-]");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "noise-free evaluation of trained agents");
    std::string agents_path, eval_scenario = "lca-ia";
    eval_cmd->add_option("--agents", agents_path, "agents JSON [file]")->required();
    eval_cmd->add_option("--scenario", eval_scenario, "scenario name [-]");

    // scenarios run
    auto* scen_cmd = app.add_subcommand("scenarios", "scenario comparison runner");
    auto* scen_run = scen_cmd->add_subcommand("run", "train + evaluate scenarios");
    bool run_all_flag = false;
    std::vector<std::string> scen_names;
    scen_run->add_flag("--all", run_all_flag, "run all five scenarios");
    scen_run->add_option("--scenario", scen_names, "scenario names to run [-]");

    // report
    auto* report_cmd =
        app.add_subcommand("report", "rebuild summary files from logs under --out");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.run.train_template.seed = seed;
        if (*influent_export) return cmd_influent_export(cfg, horizon, dt);
        if (*plant_sim)
            return cmd_plant_simulate(cfg, sim_days, sim_action.pac_dose,
                                      sim_action.do_setpoint);
        if (*impacts_assess) return cmd_impacts_assess(cfg, fluxes_path);
        if (*bounds_sample) return cmd_bounds_sample(cfg, bounds_n, seed);
        if (*train_cmd) return cmd_train(cfg, scenario_name, seed);
        if (*eval_cmd) return cmd_evaluate(cfg, eval_scenario, agents_path);
        if (*scen_run) return cmd_scenarios_run(cfg, run_all_flag, scen_names);
        if (*report_cmd) return cmd_report(cfg);
        std::cerr << "missing subcommand; see --help\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
