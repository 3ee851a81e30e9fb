#include "acband/serialize.hpp"

#include <ostream>
#include <type_traits>

#include "json.hpp"

namespace acband {

namespace {

using nlohmann::ordered_json;

ordered_json ids(std::span<const ConfigId> configs) {
    ordered_json out = ordered_json::array();
    for (ConfigId c : configs) out.push_back(c.value);
    return out;
}

ordered_json outcome_json(const GroupOutcome& o) {
    ordered_json j;
    j["instance"] = o.instance.value;
    j["participants"] = ids(o.participants);
    j["winner"] = o.winner ? ordered_json(o.winner->value) : ordered_json(nullptr);
    j["winner_runtime"] = o.winner_runtime ? ordered_json(*o.winner_runtime) : ordered_json(nullptr);
    j["finish_time"] = o.finish_time;
    j["cpu_charge"] = o.cpu_charge;
    j["cpu_charge_micros"] = o.cpu_charge_micros();
    return j;
}

ordered_json cse_json(const CseSchedule& s) {
    ordered_json j;
    j["rho"] = s.rho;
    j["n"] = s.n;
    j["budget"] = s.budget;
    j["r1"] = s.r1;
    j["r2"] = s.r2;
    j["sizes"] = s.sizes;
    j["partitions"] = s.partitions;
    j["round_budgets"] = s.round_budgets;
    return j;
}

ordered_json schedule_json(const EpochSchedule& s) {
    ordered_json j;
    const EpochConstants& c = s.constants;
    j["n_alpha_delta"] = c.n_alpha_delta;
    j["n0"] = c.n0;
    j["k"] = c.k;
    j["E"] = c.epochs;
    j["q"] = c.q;
    j["C1"] = c.c1;
    j["C2"] = c.c2;
    j["C3"] = c.c3;
    j["budget"] = s.budget;
    j["total_sampled"] = s.total_sampled();
    ordered_json epochs = ordered_json::array();
    for (const EpochPlan& e : s.epochs) {
        ordered_json ej;
        ej["index"] = e.index;
        ej["n"] = e.n;
        ej["rho"] = e.rho;
        ej["c"] = e.quotient;
        ej["budget"] = e.budget;
        ej["cse"] = cse_json(e.cse);
        epochs.push_back(std::move(ej));
    }
    j["epochs"] = std::move(epochs);
    return j;
}

ordered_json plan_json(const BracketPlan& p) {
    ordered_json j;
    j["eta"] = p.eta;
    j["s_max"] = p.s_max;
    j["n_max"] = p.n_max;
    j["budget"] = p.budget;
    j["max_resource"] = p.max_resource;
    j["total_evaluations"] = p.total_evaluations();
    j["total_configs"] = p.total_configs();
    ordered_json brackets = ordered_json::array();
    for (const Bracket& b : p.brackets) {
        ordered_json bj;
        bj["s"] = b.s;
        ordered_json rungs = ordered_json::array();
        for (const Rung& r : b.rungs) rungs.push_back({{"n", r.n}, {"r", r.r}});
        bj["rungs"] = std::move(rungs);
        brackets.push_back(std::move(bj));
    }
    j["brackets"] = std::move(brackets);
    return j;
}

}  // namespace

std::string run_result_json(const RunResult& r) {
    ordered_json j;
    j["method"] = r.method;
    j["seed"] = r.seed;
    j["winner"] = r.winner.value;
    j["cpu_seconds"] = r.ledger.total_seconds();
    j["cpu_micros"] = r.ledger.total_micros();
    j["group_size"] = r.group_size;
    j["wall_clock_proxy"] = r.wall_clock_proxy();
    j["configs_sampled"] = r.sampled.size();
    j["instances_used"] = r.instances_used();

    if (r.acband_params) {
        const ACBandParams& p = *r.acband_params;
        ordered_json pj;
        pj["k"] = p.k;
        pj["alpha"] = p.alpha;
        pj["delta"] = p.delta;
        pj["epsilon"] = p.epsilon;
        pj["n0"] = p.n0.value_or(0);
        pj["budget"] = p.budget.value_or(0);
        j["params"] = std::move(pj);
    }
    if (r.hyperband_params) {
        const HyperbandParams& p = *r.hyperband_params;
        j["params"] = {{"eta", p.eta}, {"n_max", p.n_max}, {"budget", p.budget}};
    }
    if (r.acband_schedule) j["schedule"] = schedule_json(*r.acband_schedule);
    if (r.hyperband_plan) j["plan"] = plan_json(*r.hyperband_plan);

    ordered_json epochs = ordered_json::array();
    for (const EpochRecord& e : r.epochs) {
        ordered_json ej;
        ej["index"] = e.index;
        ej["configs"] = ids(e.configs);
        ej["winner"] = e.winner.value;
        ej["instances_used"] = e.instances_used;
        ej["cpu_micros"] = r.ledger.epoch_micros(e.index);
        epochs.push_back(std::move(ej));
    }
    j["epochs"] = std::move(epochs);
    j["sampled"] = ids(r.sampled);
    return j.dump(2) + "\n";
}

void write_trace_jsonl(std::ostream& out, std::span<const TraceEvent> trace) {
    for (const TraceEvent& event : trace) {
        ordered_json j = std::visit(
            [](const auto& e) -> ordered_json {
                using T = std::decay_t<decltype(e)>;
                ordered_json o;
                if constexpr (std::is_same_v<T, EvaluationRecord>) {
                    o["type"] = "evaluation";
                    o["epoch"] = e.epoch;
                    o["round"] = e.round;
                    o["partition"] = e.partition;
                    o.update(outcome_json(e.outcome));
                } else if constexpr (std::is_same_v<T, EliminationRecord>) {
                    o["type"] = "elimination";
                    o["epoch"] = e.epoch;
                    o["round"] = e.round;
                    o["partition"] = e.partition;
                    o["kept"] = ids(e.kept);
                    o["dropped"] = ids(e.dropped);
                } else {
                    o["type"] = "single_run";
                    o["bracket"] = e.bracket;
                    o["rung"] = e.rung;
                    o["config"] = e.config.value;
                    o["instance"] = e.instance.value;
                    o["runtime"] = e.runtime;
                    o["reused"] = e.reused;
                }
                return o;
            },
            event);
        out << j.dump() << '\n';
    }
}

std::string eval_report_json(const EvalReport& r) {
    ordered_json j;
    j["winner"] = r.winner.value;
    j["total_runtime_winner"] = r.total_runtime_winner;
    j["total_runtime_best"] = r.total_runtime_best;
    j["gap_to_best"] = r.gap_to_best;
    j["gap_to_best_percent"] = 100.0 * r.gap_to_best;
    j["gap_to_subset_best"] = r.gap_to_subset_best;
    j["gap_to_subset_best_percent"] = 100.0 * r.gap_to_subset_best;
    j["delta_m"] = r.delta_m;
    j["r_delta"] = r.r_delta;
    j["cpu_time"] = r.cpu_time;
    return j.dump(2) + "\n";
}

std::string eval_report_csv(const EvalReport& r) {
    // Reuse the JSON number formatting so both renderings agree digit for digit.
    const auto num = [](double v) { return ordered_json(v).dump(); };
    std::string out =
        "winner,total_runtime_winner,total_runtime_best,gap_to_best,gap_to_best_percent,gap_to_subset_best,"
        "gap_to_subset_best_percent,delta_m,r_delta,cpu_time\n";
    out += std::to_string(r.winner.value) + ',' + num(r.total_runtime_winner) + ',' + num(r.total_runtime_best) + ',' +
           num(r.gap_to_best) + ',' + num(100.0 * r.gap_to_best) + ',' + num(r.gap_to_subset_best) + ',' +
           num(100.0 * r.gap_to_subset_best) + ',' + num(r.delta_m) + ',' + num(r.r_delta) + ',' + num(r.cpu_time) + '\n';
    return out;
}

std::string scenario_sidecar_json(const SyntheticScenario& s) {
    ordered_json j;
    j["lambdas"] = s.lambdas;
    j["epsilon"] = s.epsilon;
    j["alpha_realized"] = s.alpha_realized;
    j["seed"] = s.seed;
    j["n_configs"] = s.matrix.n_configs();
    j["n_instances"] = s.matrix.n_instances();
    j["timeout"] = s.matrix.timeout();
    return j.dump(2) + "\n";
}

}  // namespace acband
