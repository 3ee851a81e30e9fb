#include "acband/acband.hpp"

#include <numeric>
#include <span>
#include <string>

#include "acband/error.hpp"

namespace acband {

std::int64_t RunResult::instances_used() const {
    std::int64_t total = 0;
    for (const EpochRecord& e : epochs) total += e.instances_used;
    return total;
}

ACBandParams resolve_acband_params(ACBandParams params, const CostOracle& oracle) {
    if (!params.n0) params.n0 = 2 * n_alpha_delta(params.alpha, params.delta);
    const auto available = static_cast<std::int64_t>(oracle.n_instances());
    if (!params.budget) params.budget = available;
    if (*params.budget > available)
        raise(Errc::PoolExhausted, "budget " + std::to_string(*params.budget) + " exceeds the " + std::to_string(available) +
                                       " available instances");
    return params;
}

RunResult run_acband(const ACBandParams& raw_params, const CostOracle& oracle, StatisticKind statistic, unsigned threads) {
    const ACBandParams params = resolve_acband_params(raw_params, oracle);
    EpochSchedule schedule = epoch_schedule(params.alpha, params.delta, *params.n0, params.k, *params.budget);

    const auto pool = static_cast<std::int64_t>(oracle.n_configs());
    if (schedule.total_sampled() > pool)
        raise(Errc::PoolExhausted, "AC-Band samples " + std::to_string(schedule.total_sampled()) + " configurations, the oracle has " +
                                       std::to_string(pool));

    const SeededRng root(params.seed);

    // Uniform sampling without replacement == taking prefixes of one shuffle.
    std::vector<ConfigId> config_order(oracle.n_configs());
    for (std::size_t i = 0; i < config_order.size(); ++i) config_order[i] = ConfigId(static_cast<std::uint32_t>(i));
    {
        SeededRng r = root.fork("configs");
        r.shuffle(std::span<ConfigId>(config_order));
    }
    std::vector<InstanceId> instance_order(oracle.n_instances());
    for (std::size_t i = 0; i < instance_order.size(); ++i) instance_order[i] = InstanceId(static_cast<std::uint32_t>(i));
    {
        SeededRng r = root.fork("instances");
        r.shuffle(std::span<InstanceId>(instance_order));
    }

    RunResult result;
    result.method = "acband";
    result.seed = params.seed;
    result.group_size = params.k;

    RunContext context(oracle.n_instances(), threads);
    std::size_t next_config = 0;
    std::size_t next_instance = 0;

    ConfigId incumbent = config_order[next_config++];
    result.sampled.push_back(incumbent);

    for (const EpochPlan& plan : schedule.epochs) {
        std::vector<ConfigId> candidates{incumbent};
        for (int i = 1; i < plan.n; ++i) {
            candidates.push_back(config_order[next_config]);
            result.sampled.push_back(config_order[next_config]);
            ++next_config;
        }
        const auto slice = std::span<const InstanceId>(instance_order).subspan(next_instance, static_cast<std::size_t>(plan.budget));
        next_instance += static_cast<std::size_t>(plan.budget);

        context.epoch = plan.index;
        SeededRng epoch_rng = root.fork("epoch", {static_cast<std::uint64_t>(plan.index)});
        const CseResult cse = run_cse(candidates, slice, CseOptions{params.k, plan.rho, statistic}, oracle, epoch_rng, context);

        incumbent = cse.winner;
        result.epochs.push_back(EpochRecord{plan.index, std::move(candidates), cse.winner, cse.instances_used});
    }

    result.winner = incumbent;
    result.ledger = context.ledger();
    result.trace = context.take_trace();
    result.acband_params = params;
    result.acband_schedule = std::move(schedule);
    return result;
}

}  // namespace acband
