#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acband/oracle.hpp"
#include "acband/rng.hpp"
#include "acband/statistics.hpp"
#include "acband/trace.hpp"
#include "acband/types.hpp"

namespace acband {

/// Keep-count of an elimination step: floor(x / 2^rho), raised to 1 for
/// x >= 2 so that every group keeps a survivor. Quotients within 1e-9 of the
/// next integer are snapped up to absorb rounding in 2^rho.
int f_rho(int x, double rho);

/// Throws DomainError unless 0 < rho <= log2(k) and k >= 2.
void check_rho(double rho, int k);

/// Round structure and per-round budgets of one CSE call.
///
/// Round r (0-based here) starts with sizes[r] active arms split into
/// partitions[r] evaluated groups, each of which consumes round_budgets[r]
/// fresh instances. The first r1 rounds are partition rounds (more than k
/// arms active), the remaining r2 rounds evaluate a single group.
struct CseSchedule {
    double rho = 0.0;
    int k = 0;
    int n = 0;
    std::int64_t budget = 0;
    int r1 = 0;
    int r2 = 0;
    std::vector<int> sizes;
    std::vector<std::int64_t> partitions;
    std::vector<std::int64_t> round_budgets;

    int rounds() const noexcept { return r1 + r2; }
    std::int64_t max_partitions() const;
    /// Sum over rounds of partitions * round budget.
    std::int64_t instances_used() const;
};

/// Rounds and partition counts for (rho, k, n); round_budgets stays empty.
CseSchedule cse_structure(double rho, int k, int n);

/// Full schedule with b_r = floor(B / (P_r * R)). Throws InsufficientBudget
/// when any b_r would be zero.
CseSchedule cse_schedule(double rho, int k, int n, std::int64_t budget);

/// Smallest budget for which every b_r >= 1, i.e. R * max_r P_r.
std::int64_t cse_minimum_budget(double rho, int k, int n);

/// ceil(log_{k/f(k)}(n)) and ceil(log_{k/f(k)}(k)): closed-form upper bounds
/// on the two round counts.
struct RoundBounds {
    int r1 = 0;
    int r2 = 0;
};
RoundBounds cse_round_bounds(double rho, int k, int n);

struct ConfigPartition {
    std::vector<std::vector<ConfigId>> groups;
    /// The last group is smaller than k and advances without evaluation.
    bool has_passthrough = false;

    std::size_t evaluated_groups() const noexcept { return groups.size() - (has_passthrough ? 1 : 0); }
};

/// Shuffles `configs` with `rng` and cuts them into ceil(n / k) consecutive
/// groups of size k, the last one possibly smaller.
ConfigPartition partition_configs(std::span<const ConfigId> configs, int k, SeededRng& rng);

struct EliminationPlan {
    std::vector<ConfigId> group;
    int keep_count = 1;
    std::int64_t budget = 0;
    std::span<const InstanceId> instances;
};

struct EliminationResult {
    std::vector<ConfigId> kept;
    std::vector<ConfigId> dropped;
    std::vector<GroupOutcome> outcomes;
};

/// Runs the whole group on each of the plan's instances, scores every member
/// from this call's outcomes only, and keeps the keep_count best.
EliminationResult arm_elimination(const EliminationPlan& plan, const CostOracle& oracle, StatisticKind kind,
                                  SeededRng& rng);

struct CseOptions {
    int k = 2;
    double rho = 1.0;
    StatisticKind statistic = StatisticKind::WinFrequency;
};

struct CseResult {
    ConfigId winner;
    CseSchedule schedule;
    int rounds_executed = 0;
    std::int64_t instances_used = 0;
};

/// Combinatorial successive elimination over `configs` with budget
/// B = instances.size(). Instances are consumed front to back in disjoint
/// slices; every evaluation is committed to `context` in partition order.
/// Group-level randomness is forked from `rng` per (round, partition), so
/// the result does not depend on context.threads.
CseResult run_cse(std::span<const ConfigId> configs, std::span<const InstanceId> instances, const CseOptions& options,
                  const CostOracle& oracle, SeededRng& rng, RunContext& context);

}  // namespace acband
