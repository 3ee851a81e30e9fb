#include "acband/cse.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <string>

#include "acband/error.hpp"
#include "acband/ranking.hpp"

namespace acband {

namespace {

constexpr double kSnap = 1e-9;

int ceil_snapped(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < kSnap) return static_cast<int>(r);
    return static_cast<int>(std::ceil(x));
}

int apply_g(int x, int k, int keep_k) { return keep_k * (x / k) + x % k; }

}  // namespace

int f_rho(int x, double rho) {
    if (x < 1) raise(Errc::DomainError, "f_rho needs x >= 1, got " + std::to_string(x));
    if (!(rho > 0.0) || !std::isfinite(rho)) raise(Errc::DomainError, "f_rho needs rho > 0");
    const double q = static_cast<double>(x) / std::exp2(rho);
    double fl = std::floor(q);
    if (q - fl > 1.0 - kSnap) fl += 1.0;
    int keep = static_cast<int>(fl);
    if (x >= 2) keep = std::max(keep, 1);
    return keep;
}

void check_rho(double rho, int k) {
    if (k < 2) raise(Errc::DomainError, "group size k must be at least 2, got " + std::to_string(k));
    if (!(rho > 0.0) || rho > std::log2(static_cast<double>(k)) + 1e-12)
        raise(Errc::DomainError, "rho must lie in (0, log2(k)] = (0, " + std::to_string(std::log2(k)) + "], got " + std::to_string(rho));
}

std::int64_t CseSchedule::max_partitions() const {
    return partitions.empty() ? 0 : *std::max_element(partitions.begin(), partitions.end());
}

std::int64_t CseSchedule::instances_used() const {
    std::int64_t total = 0;
    for (std::size_t r = 0; r < round_budgets.size(); ++r) total += partitions[r] * round_budgets[r];
    return total;
}

CseSchedule cse_structure(double rho, int k, int n) {
    check_rho(rho, k);
    if (n < 2) raise(Errc::InvalidArgument, "CSE needs at least two configurations, got " + std::to_string(n));

    CseSchedule s;
    s.rho = rho;
    s.k = k;
    s.n = n;
    const int keep_k = f_rho(k, rho);
    if (keep_k >= k) raise(Errc::DomainError, "rho is too small to eliminate anything from a group of " + std::to_string(k));

    int x = n;
    while (x > k) {
        s.sizes.push_back(x);
        s.partitions.push_back(x / k);
        x = apply_g(x, k, keep_k);
        ++s.r1;
    }
    // x <= k arms remain: single-group rounds until one survivor.
    while (x > 1) {
        s.sizes.push_back(x);
        s.partitions.push_back(1);
        x = f_rho(x, rho);
        ++s.r2;
    }
    return s;
}

CseSchedule cse_schedule(double rho, int k, int n, std::int64_t budget) {
    CseSchedule s = cse_structure(rho, k, n);
    s.budget = budget;
    const std::int64_t rounds = s.rounds();
    for (std::int64_t p : s.partitions) {
        const std::int64_t b = budget > 0 ? budget / (p * rounds) : 0;
        if (b < 1)
            raise(Errc::InsufficientBudget, "budget " + std::to_string(budget) + " leaves a round with b_r = 0 (need at least " +
                                                std::to_string(s.max_partitions() * rounds) + " for rho=" + std::to_string(rho) +
                                                ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
        s.round_budgets.push_back(b);
    }
    return s;
}

std::int64_t cse_minimum_budget(double rho, int k, int n) {
    const CseSchedule s = cse_structure(rho, k, n);
    return s.max_partitions() * s.rounds();
}

RoundBounds cse_round_bounds(double rho, int k, int n) {
    check_rho(rho, k);
    const double base = std::log(static_cast<double>(k) / static_cast<double>(f_rho(k, rho)));
    return {ceil_snapped(std::log(static_cast<double>(n)) / base), ceil_snapped(std::log(static_cast<double>(k)) / base)};
}

ConfigPartition partition_configs(std::span<const ConfigId> configs, int k, SeededRng& rng) {
    if (k < 2) raise(Errc::InvalidArgument, "partition size must be at least 2");
    if (configs.size() < 2) raise(Errc::InvalidArgument, "partition needs at least two configurations");

    std::vector<ConfigId> shuffled(configs.begin(), configs.end());
    rng.shuffle(std::span<ConfigId>(shuffled));

    ConfigPartition out;
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t start = 0; start < shuffled.size(); start += ku) {
        const std::size_t end = std::min(start + ku, shuffled.size());
        out.groups.emplace_back(shuffled.begin() + static_cast<std::ptrdiff_t>(start), shuffled.begin() + static_cast<std::ptrdiff_t>(end));
    }
    out.has_passthrough = out.groups.back().size() < ku;
    return out;
}

EliminationResult arm_elimination(const EliminationPlan& plan, const CostOracle& oracle, StatisticKind kind,
                                  SeededRng& rng) {
    const auto size = static_cast<int>(plan.group.size());
    if (plan.keep_count < 1 || plan.keep_count >= size)
        raise(Errc::InvalidArgument, "keep count " + std::to_string(plan.keep_count) + " invalid for a group of " + std::to_string(size));
    if (plan.budget < 1 || static_cast<std::int64_t>(plan.instances.size()) != plan.budget)
        raise(Errc::InvalidArgument, "elimination budget must equal the number of instances in its slice");

    EliminationResult result;
    result.outcomes.reserve(plan.instances.size());
    StatisticState state;
    for (InstanceId instance : plan.instances) {
        GroupOutcome outcome = oracle.evaluate_group(plan.group, instance, rng);
        state.update(outcome);
        result.outcomes.push_back(std::move(outcome));
    }

    std::vector<ScoredConfig> scores;
    scores.reserve(plan.group.size());
    for (ConfigId id : plan.group) scores.emplace_back(id, state.score(id, kind, oracle.timeout()));
    const std::vector<ConfigId> order = rank_with_ties(scores, rng);

    result.kept.assign(order.begin(), order.begin() + plan.keep_count);
    result.dropped.assign(order.begin() + plan.keep_count, order.end());
    return result;
}

CseResult run_cse(std::span<const ConfigId> configs, std::span<const InstanceId> instances, const CseOptions& options,
                  const CostOracle& oracle, SeededRng& rng, RunContext& context) {
    const int k = options.k;
    const auto n = static_cast<int>(configs.size());
    const auto budget = static_cast<std::int64_t>(instances.size());

    CseResult result;
    result.schedule = cse_schedule(options.rho, k, n, budget);
    {
        std::vector<ConfigId> sorted(configs.begin(), configs.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            raise(Errc::InvalidArgument, "CSE configurations must be pairwise distinct");
    }
    const CseSchedule& schedule = result.schedule;

    std::vector<ConfigId> active(configs.begin(), configs.end());
    std::size_t cursor = 0;
    int round = 0;

    while (active.size() > 1) {
        if (round >= schedule.rounds() || static_cast<int>(active.size()) != schedule.sizes[static_cast<std::size_t>(round)])
            raise(Errc::InvalidArgument, "CSE execution diverged from its schedule in round " + std::to_string(round + 1));

        // Arms at least k: partition round. Fewer: one group of everyone left.
        ConfigPartition partition;
        if (static_cast<int>(active.size()) >= k) {
            SeededRng part_rng = rng.fork("partition", {static_cast<std::uint64_t>(round)});
            partition = partition_configs(active, k, part_rng);
        } else {
            partition.groups.push_back(active);
        }

        const std::size_t n_groups = partition.evaluated_groups();
        const auto b = static_cast<std::size_t>(schedule.round_budgets[static_cast<std::size_t>(round)]);
        if (static_cast<std::int64_t>(n_groups) != schedule.partitions[static_cast<std::size_t>(round)])
            raise(Errc::InvalidArgument, "CSE partition count diverged from its schedule in round " + std::to_string(round + 1));

        const auto slice = instances.subspan(cursor, n_groups * b);
        context.reserve_instances(slice);
        cursor += n_groups * b;

        std::vector<EliminationPlan> plans(n_groups);
        for (std::size_t j = 0; j < n_groups; ++j) {
            plans[j].group = partition.groups[j];
            plans[j].keep_count = f_rho(static_cast<int>(plans[j].group.size()), options.rho);
            plans[j].budget = static_cast<std::int64_t>(b);
            plans[j].instances = slice.subspan(j * b, b);
        }

        auto run_plan = [&, round](std::size_t j) {
            SeededRng group_rng = rng.fork("group", {static_cast<std::uint64_t>(round), j});
            return arm_elimination(plans[j], oracle, options.statistic, group_rng);
        };

        std::vector<EliminationResult> outcomes(n_groups);
        const std::size_t workers = std::min<std::size_t>(context.threads, n_groups);
        if (workers <= 1) {
            for (std::size_t j = 0; j < n_groups; ++j) outcomes[j] = run_plan(j);
        } else {
            for (std::size_t start = 0; start < n_groups; start += workers) {
                std::vector<std::future<EliminationResult>> batch;
                const std::size_t end = std::min(start + workers, n_groups);
                for (std::size_t j = start; j < end; ++j) batch.push_back(std::async(std::launch::async, run_plan, j));
                for (std::size_t j = start; j < end; ++j) outcomes[j] = batch[j - start].get();
            }
        }

        std::vector<ConfigId> next;
        if (partition.has_passthrough) next = partition.groups.back();
        for (std::size_t j = 0; j < n_groups; ++j) {
            for (GroupOutcome& outcome : outcomes[j].outcomes)
                context.commit(EvaluationRecord{context.epoch, round + 1, static_cast<int>(j), std::move(outcome)});
            context.record(EliminationRecord{context.epoch, round + 1, static_cast<int>(j), outcomes[j].kept, outcomes[j].dropped});
            next.insert(next.end(), outcomes[j].kept.begin(), outcomes[j].kept.end());
        }
        active = std::move(next);
        ++round;
    }

    if (round != schedule.rounds())
        raise(Errc::InvalidArgument, "CSE finished after " + std::to_string(round) + " rounds, schedule has " + std::to_string(schedule.rounds()));
    result.winner = active.front();
    result.rounds_executed = round;
    result.instances_used = static_cast<std::int64_t>(cursor);
    return result;
}

}  // namespace acband
