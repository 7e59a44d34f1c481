#include "wwtp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <atomic>
#include <thread>

namespace wwtp::scenarios {

ScenarioSpec scenario_by_name(const std::string& name) {
    ScenarioSpec s;
    s.name = name;
    if (name == "baseline") {
        s.kind = Kind::Baseline;
        s.trains = false;
        s.standard = impacts::grade_ia();  // baseline is scored against grade I-A
        s.fixed_action = plant::Action{1.5, 0.125};
    } else if (name == "lca-ia") {
        s.kind = Kind::LcaIa;
        s.trains = true;
        s.mode = impacts::RewardMode::Lca;
        s.standard = impacts::grade_ia();
    } else if (name == "lca-ib") {
        s.kind = Kind::LcaIb;
        s.trains = true;
        s.mode = impacts::RewardMode::Lca;
        s.standard = impacts::grade_ib();
    } else if (name == "lca-sw") {
        s.kind = Kind::LcaSw;
        s.trains = true;
        s.mode = impacts::RewardMode::Lca;
        s.standard = impacts::quasi_sw_iv();
    } else if (name == "cost") {
        s.kind = Kind::CostIa;
        s.trains = true;
        s.mode = impacts::RewardMode::Cost;
        s.standard = impacts::grade_ia();
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return s;
}

std::vector<ScenarioSpec> all_scenarios() {
    return {scenario_by_name("baseline"), scenario_by_name("lca-ia"),
            scenario_by_name("cost"), scenario_by_name("lca-ib"),
            scenario_by_name("lca-sw")};
}

namespace {

double mean_of(const EpisodeLog& log, double (*get)(const IntervalLog&)) {
    if (log.rows.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : log.rows) s += get(r);
    return s / static_cast<double>(log.rows.size());
}

double per_m3(const EpisodeLog& log, double (*get)(const IntervalLog&)) {
    double load = 0.0, vol = 0.0;
    for (const auto& r : log.rows) {
        load += get(r) * r.treated_m3;
        vol += r.treated_m3;
    }
    return vol > 0.0 ? load / vol : 0.0;
}

}  // namespace

double EpisodeLog::mean_do() const {
    return mean_of(*this, [](const IntervalLog& r) { return r.action.do_setpoint; });
}
double EpisodeLog::mean_dose() const {
    return mean_of(*this, [](const IntervalLog& r) { return r.action.pac_dose; });
}
double EpisodeLog::violation_rate() const {
    return mean_of(*this, [](const IntervalLog& r) { return r.violation ? 1.0 : 0.0; });
}
double EpisodeLog::per_m3_energy() const {
    return per_m3(*this, [](const IntervalLog& r) { return r.iv.energy_total; });
}
double EpisodeLog::per_m3_cost() const {
    return per_m3(*this, [](const IntervalLog& r) { return r.iv.cost_total; });
}
double EpisodeLog::per_m3_ep() const {
    return per_m3(*this, [](const IntervalLog& r) { return r.iv.ep_total; });
}
double EpisodeLog::per_m3_ghg() const {
    return per_m3(*this, [](const IntervalLog& r) { return r.iv.ghg_total; });
}

Cumulative cumulative(const EpisodeLog& log) {
    Cumulative c;
    for (const auto& r : log.rows) {
        c.energy_kwh += r.iv.energy_total * r.treated_m3;
        c.cost_cny += r.iv.cost_total * r.treated_m3;
        c.ep_kg += r.iv.ep_total * r.treated_m3;
        c.ghg_kg += r.iv.ghg_total * r.treated_m3;
    }
    return c;
}

Cumulative cumulative_delta(const EpisodeLog& log, const EpisodeLog& baseline) {
    if (log.rows.size() != baseline.rows.size())
        throw std::invalid_argument("cumulative_delta: mismatched horizons");
    const Cumulative a = cumulative(log);
    const Cumulative b = cumulative(baseline);
    return {a.energy_kwh - b.energy_kwh, a.cost_cny - b.cost_cny, a.ep_kg - b.ep_kg,
            a.ghg_kg - b.ghg_kg};
}

std::vector<BreakdownRow> component_breakdown(const EpisodeLog& log) {
    // Volume-weighted absolute component totals.
    struct Acc {
        const char* indicator;
        const char* component;
        double value = 0.0;
        bool offset = false;  // biogas credit, reported against the gross total
    };
    std::vector<Acc> acc = {
        {"energy", "aeration"}, {"energy", "pumps"},     {"energy", "chemicals"},
        {"energy", "other"},    {"energy", "biogas", 0.0, true},
        {"cost", "energy"},     {"cost", "chemicals"},   {"cost", "transport"},
        {"cost", "landfill"},   {"cost", "misc"},        {"cost", "biogas", 0.0, true},
        {"ep", "tp"},           {"ep", "cod"},           {"ep", "nh4"},
        {"ep", "no3"},          {"ep", "no2"},
        {"ghg", "process"},     {"ghg", "energy"},       {"ghg", "material"},
        {"ghg", "biogas", 0.0, true},
    };
    for (const auto& r : log.rows) {
        const double v = r.treated_m3;
        const double vals[] = {
            r.iv.energy.aeration, r.iv.energy.pumps,   r.iv.energy.chemicals,
            r.iv.energy.other,    r.iv.energy.biogas,  r.iv.cost.energy,
            r.iv.cost.chemicals,  r.iv.cost.transport, r.iv.cost.landfill,
            r.iv.cost.misc,       r.iv.cost.biogas,    r.iv.ep.tp,
            r.iv.ep.cod,          r.iv.ep.nh4,         r.iv.ep.no3,
            r.iv.ep.no2,          r.iv.ghg.process,    r.iv.ghg.energy,
            r.iv.ghg.material,    r.iv.ghg.biogas,
        };
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i].value += vals[i] * v;
    }

    // Gross (positive) totals per indicator.
    double gross[4] = {0.0, 0.0, 0.0, 0.0};
    auto idx = [](const std::string& ind) {
        return ind == "energy" ? 0 : ind == "cost" ? 1 : ind == "ep" ? 2 : 3;
    };
    for (const auto& a : acc)
        if (!a.offset) gross[idx(a.indicator)] += a.value;

    std::vector<BreakdownRow> rows;
    rows.reserve(acc.size());
    for (const auto& a : acc) {
        BreakdownRow row;
        row.indicator = a.indicator;
        row.component = a.component;
        const double g = gross[idx(a.indicator)];
        if (g > 0.0) {
            row.share_pct = (a.offset ? -a.value : a.value) / g * 100.0;
        } else {
            row.defined = false;
            row.share_pct = std::nan("");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

EpisodeLog run_episode(const ScenarioSpec& spec, env::ControlEnv& environment,
                       double days, const marl::Agents* agents) {
    EpisodeLog log;
    log.scenario = spec.name;
    environment.reset();

    const double dt = environment.config().dt_control_d;
    const int intervals = static_cast<int>(std::llround(days / dt));
    const marl::ObsScaler scaler = marl::ObsScaler::from(environment.config().influent);
    std::mt19937_64 unused_rng(0);  // evaluation runs noise-free

    log.rows.reserve(intervals);
    for (int i = 0; i < intervals; ++i) {
        plant::Action a = spec.fixed_action;
        if (agents) {
            const auto& h = environment.history();
            std::vector<env::IntervalRecord> window(h.end() - marl::kHistoryLen, h.end());
            a.do_setpoint = marl::act((*agents)[0],
                                      marl::build_observation(window, marl::AgentId::Do, scaler),
                                      false, unused_rng);
            a.pac_dose = marl::act((*agents)[1],
                                   marl::build_observation(window, marl::AgentId::Dose, scaler),
                                   false, unused_rng);
        }
        const double t = environment.time_d();
        const env::StepOutcome out = environment.step(a);
        IntervalLog row;
        row.t = t;
        row.action = a;
        row.eff = out.fluxes.effluent;
        row.iv = out.impact;
        row.violation = !impacts::check_standard(out.fluxes.effluent, spec.standard).all_ok();
        row.treated_m3 = out.fluxes.treated_volume;
        log.rows.push_back(std::move(row));
    }
    return log;
}

}  // namespace

EpisodeLog run_baseline(const ScenarioSpec& spec, const env::EnvConfig& cfg, double days) {
    if (spec.kind != Kind::Baseline)
        throw std::invalid_argument("run_baseline: not the baseline scenario");
    env::ControlEnv environment(cfg);
    return run_episode(spec, environment, days, nullptr);
}

EpisodeLog run_trained(const ScenarioSpec& spec, const env::EnvConfig& cfg,
                       const marl::Agents& agents, double days) {
    env::ControlEnv environment(cfg);
    return run_episode(spec, environment, days, &agents);
}

impacts::RewardConfig reward_for(const ScenarioSpec& spec,
                                 const impacts::RewardConfig& tmpl) {
    impacts::RewardConfig rc = tmpl;
    rc.mode = spec.mode;
    rc.standard = spec.standard;
    return rc;
}

SeedResult run_scenario_seed(const ScenarioSpec& spec, const RunConfig& cfg,
                             std::uint64_t seed) {
    if (!spec.trains) throw std::invalid_argument("run_scenario_seed: baseline does not train");
    SeedResult res;
    res.seed = seed;

    marl::TrainConfig tc = cfg.train_template;
    tc.seed = seed;
    const impacts::RewardConfig rc = reward_for(spec, cfg.reward_template);

    env::ControlEnv environment(cfg.env);
    res.train = marl::train(environment, rc, tc);
    res.eval = run_trained(spec, cfg.env, res.train.agents, cfg.eval_days);
    res.eval.seed = seed;
    return res;
}

namespace {

int worker_cap() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env_cap = std::getenv("WWTP_MARL_THREADS")) {
        const long v = std::strtol(env_cap, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<int>(n);
}

struct Job {
    std::size_t scenario_index;
    std::size_t seed_index;  // kBaselineJob marks the baseline episode
};
constexpr std::size_t kBaselineJob = static_cast<std::size_t>(-1);

}  // namespace

std::vector<ScenarioResult> run_all(const RunConfig& cfg,
                                    const std::vector<ScenarioSpec>& specs) {
    std::vector<ScenarioResult> results(specs.size());
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < specs.size(); ++si) {
        results[si].spec = specs[si];
        if (specs[si].trains) {
            results[si].seed_runs.resize(cfg.seeds.size());
            for (std::size_t k = 0; k < cfg.seeds.size(); ++k) jobs.push_back({si, k});
        } else {
            jobs.push_back({si, kBaselineJob});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            const ScenarioSpec& spec = specs[job.scenario_index];
            if (job.seed_index == kBaselineJob) {
                results[job.scenario_index].baseline_eval =
                    run_baseline(spec, cfg.env, cfg.eval_days);
            } else {
                results[job.scenario_index].seed_runs[job.seed_index] =
                    run_scenario_seed(spec, cfg, cfg.seeds[job.seed_index]);
            }
        }
    };

    const int nthreads = std::min<int>(worker_cap(), static_cast<int>(jobs.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace wwtp::scenarios
