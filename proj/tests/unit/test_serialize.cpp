#include <gtest/gtest.h>

#include <sstream>

#include "acband/acband.hpp"
#include "acband/hyperband.hpp"
#include "acband/serialize.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace acband;
using nlohmann::json;

TEST(Serialize, RunResultRoundTrip) {
    const RuntimeMatrix m = test::random_matrix(80, 600, 1);
    const MatrixOracle oracle(m);
    ACBandParams p;
    p.seed = 4;
    const RunResult r = run_acband(p, oracle);
    const std::string text = run_result_json(r);
    EXPECT_EQ(text, run_result_json(run_acband(p, oracle)));

    const json j = json::parse(text);
    EXPECT_EQ(j["method"], "acband");
    EXPECT_EQ(j["winner"], r.winner.value);
    EXPECT_EQ(j["cpu_micros"], r.ledger.total_micros());
    EXPECT_EQ(j["configs_sampled"], 60);
    EXPECT_EQ(j["schedule"]["E"], 1);
    EXPECT_EQ(j["schedule"]["n0"], 118);
    EXPECT_EQ(j["epochs"].size(), 1u);
    EXPECT_EQ(j["params"]["k"], 2);
}

TEST(Serialize, HyperbandPayload) {
    const RuntimeMatrix m = test::random_matrix(40, 300, 2);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{3, 9, 300, 1}, oracle);
    const json j = json::parse(run_result_json(r));
    EXPECT_EQ(j["method"], "hyperband");
    EXPECT_EQ(j["plan"]["s_max"], 2);
    EXPECT_EQ(j["plan"]["total_configs"], 17);
    EXPECT_EQ(j["group_size"], 1);
}

TEST(Serialize, TraceHasOneLinePerEvent) {
    const RuntimeMatrix m = test::random_matrix(80, 600, 3);
    const MatrixOracle oracle(m);
    const RunResult r = run_acband(ACBandParams{}, oracle);
    std::ostringstream out;
    write_trace_jsonl(out, r.trace);
    std::istringstream in(out.str());
    std::size_t lines = 0, evaluations = 0, eliminations = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const json j = json::parse(line);
        if (j["type"] == "evaluation") {
            ++evaluations;
            EXPECT_TRUE(j.contains("cpu_charge_micros"));
        } else if (j["type"] == "elimination") {
            ++eliminations;
            EXPECT_TRUE(j.contains("kept"));
        }
    }
    EXPECT_EQ(lines, r.trace.size());
    EXPECT_EQ(static_cast<std::int64_t>(evaluations), r.instances_used());
    EXPECT_GT(eliminations, 0u);
}

TEST(Serialize, EvalReportRenderings) {
    EvalReport e;
    e.winner = ConfigId(3);
    e.gap_to_best = 0.14;
    e.gap_to_subset_best = 0.0;
    const json j = json::parse(eval_report_json(e));
    EXPECT_EQ(j["gap_to_best"], 0.14);
    EXPECT_NEAR(j["gap_to_best_percent"].get<double>(), 14.0, 1e-12);
    const std::string csv = eval_report_csv(e);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_EQ(csv.substr(csv.find('\n') + 1, 2), "3,");
}

TEST(Serialize, Sidecar) {
    ExponentialScenarioSpec spec;
    spec.n_configs = 5;
    spec.n_instances = 3;
    spec.target_alpha = 0.4;
    spec.epsilon = 0.1;
    spec.seed = 8;
    const SyntheticScenario s = generate_exponential_scenario(spec);
    const json j = json::parse(scenario_sidecar_json(s));
    EXPECT_EQ(j["lambdas"].size(), 5u);
    EXPECT_EQ(j["epsilon"], 0.1);
    EXPECT_EQ(j["alpha_realized"], 0.4);
    EXPECT_EQ(j["seed"], 8);
    EXPECT_EQ(j["lambdas"][0].get<double>(), s.lambdas[0]);
}
