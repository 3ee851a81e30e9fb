#include "acband/hyperband.hpp"

#include <span>
#include <string>
#include <vector>

#include "acband/error.hpp"
#include "acband/ranking.hpp"

namespace acband {

namespace {

struct Seen {
    double runtime_sum = 0.0;
    std::int64_t count = 0;

    double mean() const { return runtime_sum / static_cast<double>(count); }
};

}  // namespace

HyperbandParams resolve_hyperband_params(HyperbandParams params, const CostOracle& oracle) {
    if (params.n_max == 0) params.n_max = hb_default_n_max(params.eta, static_cast<std::int64_t>(oracle.n_configs()));
    if (params.budget == 0) params.budget = static_cast<std::int64_t>(oracle.n_instances());
    return params;
}

RunResult run_hyperband(const HyperbandParams& raw_params, const CostOracle& oracle) {
    const HyperbandParams params = resolve_hyperband_params(raw_params, oracle);
    BracketPlan plan = hb_plan(params);

    const auto pool = static_cast<std::int64_t>(oracle.n_configs());
    if (plan.total_configs() > pool)
        raise(Errc::PoolExhausted, "Hyperband draws " + std::to_string(plan.total_configs()) + " configurations, the oracle has " +
                                       std::to_string(pool));
    const std::size_t m = oracle.n_instances();
    if (m == 0) raise(Errc::PoolExhausted, "the oracle has no instances");

    const SeededRng root(params.seed);
    std::vector<ConfigId> config_order(oracle.n_configs());
    for (std::size_t i = 0; i < config_order.size(); ++i) config_order[i] = ConfigId(static_cast<std::uint32_t>(i));
    {
        SeededRng r = root.fork("configs");
        r.shuffle(std::span<ConfigId>(config_order));
    }

    RunResult result;
    result.method = "hyperband";
    result.seed = params.seed;
    result.group_size = 1;

    RunContext context(m);
    std::vector<Seen> seen(oracle.n_configs());
    std::size_t next_config = 0;

    for (const Bracket& bracket : plan.brackets) {
        std::vector<InstanceId> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = InstanceId(static_cast<std::uint32_t>(i));
        {
            SeededRng r = root.fork("instances", {static_cast<std::uint64_t>(bracket.s)});
            r.shuffle(std::span<InstanceId>(order));
        }

        std::vector<ConfigId> active(config_order.begin() + static_cast<std::ptrdiff_t>(next_config),
                                     config_order.begin() + static_cast<std::ptrdiff_t>(next_config + bracket.rungs.front().n));
        next_config += static_cast<std::size_t>(bracket.rungs.front().n);
        EpochRecord record;
        record.index = bracket.s;
        record.configs = active;
        result.sampled.insert(result.sampled.end(), active.begin(), active.end());

        std::int64_t previous_r = 0;
        for (std::size_t i = 0; i < bracket.rungs.size(); ++i) {
            const Rung& rung = bracket.rungs[i];
            for (ConfigId c : active) {
                for (std::int64_t j = previous_r; j < rung.r; ++j) {
                    const InstanceId instance = order[static_cast<std::size_t>(j) % m];
                    const double runtime = oracle.evaluate_single(c, instance);
                    seen[c.index()].runtime_sum += runtime;
                    ++seen[c.index()].count;
                    ++record.instances_used;
                    context.commit(SingleRunRecord{bracket.s, static_cast<int>(i), c, instance, runtime, j >= static_cast<std::int64_t>(m)});
                }
            }
            previous_r = rung.r;

            std::vector<ScoredConfig> scores;
            scores.reserve(active.size());
            for (ConfigId c : active) scores.emplace_back(c, -seen[c.index()].mean());
            SeededRng tie = root.fork("promote", {static_cast<std::uint64_t>(bracket.s), i});
            std::vector<ConfigId> ranked = rank_with_ties(scores, tie);
            const std::size_t next_n =
                i + 1 < bracket.rungs.size() ? static_cast<std::size_t>(bracket.rungs[i + 1].n) : std::size_t{1};
            ranked.resize(std::min(ranked.size(), std::max<std::size_t>(next_n, 1)));
            active = std::move(ranked);
        }
        record.winner = active.front();
        result.epochs.push_back(std::move(record));
    }

    std::vector<ScoredConfig> scores;
    for (ConfigId c : result.sampled)
        if (seen[c.index()].count > 0) scores.emplace_back(c, -seen[c.index()].mean());
    SeededRng tie = root.fork("winner");
    result.winner = rank_with_ties(scores, tie).front();

    result.ledger = context.ledger();
    result.trace = context.take_trace();
    result.hyperband_params = params;
    result.hyperband_plan = std::move(plan);
    return result;
}

}  // namespace acband
