#include <gtest/gtest.h>

#include <map>
#include <random>

#include "acband/error.hpp"
#include "acband/hyperband.hpp"
#include "helpers.hpp"

using namespace acband;

TEST(HyperbandPlan, SMax) {
    EXPECT_EQ(hb_s_max(3, 9), 2);
    EXPECT_EQ(hb_s_max(2, 2), 1);
    EXPECT_EQ(hb_s_max(3, 10), 3);
    EXPECT_EQ(hb_s_max(5, 1), 0);
    EXPECT_ACBAND_ERROR(hb_s_max(1, 9), DomainError);
}

TEST(HyperbandPlan, BracketShapes) {
    const BracketPlan p = hb_plan(HyperbandParams{3, 9, 1000, 0});
    ASSERT_EQ(p.brackets.size(), 3u);
    EXPECT_EQ(p.brackets[0].s, 2);
    EXPECT_EQ(p.brackets[2].s, 0);
    // n_s = ceil(3 * 3^s / (s + 1)): 9, 5, 3.
    EXPECT_EQ(p.brackets[0].rungs[0].n, 9);
    EXPECT_EQ(p.brackets[1].rungs[0].n, 5);
    EXPECT_EQ(p.brackets[2].rungs[0].n, 3);
    EXPECT_EQ(p.brackets[0].rungs[1].n, 3);
    EXPECT_EQ(p.brackets[0].rungs[2].n, 1);
    EXPECT_EQ(p.total_configs(), 17);
    for (const Bracket& b : p.brackets) {
        EXPECT_EQ(b.rungs.back().r, p.max_resource);
        for (const Rung& r : b.rungs) {
            EXPECT_GE(r.n, 1);
            EXPECT_GE(r.r, 1);
        }
    }
    EXPECT_LE(p.total_evaluations(), 1000);
}

TEST(HyperbandPlan, SampledConfigTotals) {
    // eta=5 with s_max=4 and eta=8 with s_max=3.
    EXPECT_EQ(hb_plan(HyperbandParams{5, 625, 100000, 0}).total_configs(), 842);
    EXPECT_EQ(hb_plan(HyperbandParams{8, 512, 100000, 0}).total_configs(), 618);
}

TEST(HyperbandPlan, RandomPlansFitTheBudget) {
    std::mt19937 gen(8);
    for (int t = 0; t < 300; ++t) {
        const int eta = std::uniform_int_distribution<int>(2, 8)(gen);
        const std::int64_t n_max = std::uniform_int_distribution<std::int64_t>(1, 600)(gen);
        const std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, 50000)(gen);
        try {
            const BracketPlan p = hb_plan(HyperbandParams{eta, n_max, b, 0});
            EXPECT_LE(p.total_evaluations(), b);
            HyperbandParams tighter{eta, n_max, p.total_evaluations() - 1, 0};
            if (tighter.budget >= 1) {
                try {
                    EXPECT_LT(hb_plan(tighter).max_resource, p.max_resource);
                } catch (const Error& e) {
                    EXPECT_EQ(e.code(), Errc::BudgetTooSmall);
                }
            }
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::BudgetTooSmall);
        }
    }
}

TEST(HyperbandPlan, DefaultNMaxFitsThePool) {
    EXPECT_EQ(hb_default_n_max(5, 500), 125);
    EXPECT_EQ(hb_default_n_max(5, 842), 625);
    EXPECT_EQ(hb_default_n_max(5, 841), 125);
    EXPECT_EQ(hb_default_n_max(3, 1), 1);
}

TEST(RunHyperband, PicksTheFastestConfiguration) {
    // eta=2, n_max=2 draws two configurations per bracket, four in total.
    const std::vector<double> slow(20, 10.0);
    const RuntimeMatrix m = test::matrix_from_rows({std::vector<double>(20, 1.0), slow, slow, slow}, 100);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{2, 2, 40, 1}, oracle);
    EXPECT_EQ(r.method, "hyperband");
    EXPECT_EQ(r.winner, ConfigId(0));
}

TEST(RunHyperband, LedgerIsTheSumOfFullRuntimes) {
    const RuntimeMatrix m = test::random_matrix(60, 400, 3);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{3, 27, 400, 5}, oracle);
    std::int64_t micros = 0;
    std::int64_t runs = 0;
    for (const TraceEvent& e : r.trace) {
        const auto& s = std::get<SingleRunRecord>(e);
        EXPECT_EQ(s.runtime, m.at(s.config, s.instance));
        micros += CpuLedger::to_micros(m.at(s.config, s.instance));
        ++runs;
    }
    EXPECT_EQ(micros, r.ledger.total_micros());
    EXPECT_EQ(runs, r.hyperband_plan->total_evaluations());
    EXPECT_LE(runs, 400);
    EXPECT_EQ(r.instances_used(), runs);
}

TEST(RunHyperband, PromotionOnlyRunsUnseenInstances) {
    const RuntimeMatrix m = test::random_matrix(30, 200, 4);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{3, 9, 200, 2}, oracle);
    std::map<std::pair<int, std::uint32_t>, std::vector<std::uint32_t>> by_config;
    std::map<std::pair<int, int>, std::map<std::uint32_t, int>> per_rung;
    for (const TraceEvent& e : r.trace) {
        const auto& s = std::get<SingleRunRecord>(e);
        by_config[{s.bracket, s.config.value}].push_back(s.instance.value);
        ++per_rung[{s.bracket, s.rung}][s.config.value];
        EXPECT_FALSE(s.reused);
    }
    for (const auto& [key, instances] : by_config)
        EXPECT_EQ(std::set<std::uint32_t>(instances.begin(), instances.end()).size(), instances.size());
    // Each rung adds exactly r_i - r_{i-1} runs per surviving configuration.
    for (const Bracket& b : r.hyperband_plan->brackets) {
        std::int64_t prev = 0;
        for (std::size_t i = 0; i < b.rungs.size(); ++i) {
            const auto& counts = per_rung[{b.s, static_cast<int>(i)}];
            EXPECT_EQ(static_cast<std::int64_t>(counts.size()), b.rungs[i].n);
            for (const auto& [c, runs] : counts) EXPECT_EQ(runs, b.rungs[i].r - prev);
            prev = b.rungs[i].r;
        }
    }
}

TEST(RunHyperband, ReusesInstancesOnlyWhenTheyRunOut) {
    const RuntimeMatrix m = test::random_matrix(10, 3, 5);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{2, 2, 30, 0}, oracle);
    bool reused = false;
    for (const TraceEvent& e : r.trace) reused = reused || std::get<SingleRunRecord>(e).reused;
    EXPECT_TRUE(reused);
}

TEST(RunHyperband, WinnerHasTheLowestObservedMean) {
    const RuntimeMatrix m = test::random_matrix(40, 300, 6);
    const MatrixOracle oracle(m);
    const RunResult r = run_hyperband(HyperbandParams{3, 9, 300, 8}, oracle);
    std::map<std::uint32_t, std::pair<double, int>> sums;
    for (const TraceEvent& e : r.trace) {
        const auto& s = std::get<SingleRunRecord>(e);
        sums[s.config.value].first += s.runtime;
        ++sums[s.config.value].second;
    }
    double best = 1e300;
    for (const auto& [c, sc] : sums) best = std::min(best, sc.first / sc.second);
    const auto& w = sums.at(r.winner.value);
    EXPECT_EQ(w.first / w.second, best);
}

TEST(RunHyperband, PoolExhausted) {
    const RuntimeMatrix m = test::random_matrix(10, 100, 7);
    const MatrixOracle oracle(m);
    EXPECT_ACBAND_ERROR(run_hyperband(HyperbandParams{3, 27, 100, 0}, oracle), PoolExhausted);
    EXPECT_ACBAND_ERROR(run_hyperband(HyperbandParams{3, 9, 3, 0}, oracle), BudgetTooSmall);
}
