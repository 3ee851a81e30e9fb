#pragma once

#include <cstdint>
#include <map>

#include "acband/oracle.hpp"
#include "acband/types.hpp"

namespace acband {

/// Both kinds are higher-is-better so elimination can stay statistic-agnostic.
enum class StatisticKind {
    /// wins / trials: how often the configuration finished first in its group.
    WinFrequency,
    /// -(mean runtime over the runs where it finished first).
    NegMeanRuntime,
};

struct ArmStats {
    std::uint64_t wins = 0;
    std::uint64_t trials = 0;
    double runtime_sum = 0.0;
    std::uint64_t observations = 0;

    friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

/// Feedback accumulated by one ArmElimination call.
///
/// Only the finisher's runtime is observed; censored members just gain a
/// trial. Ids are created lazily with zero counts.
class StatisticState {
public:
    void update(const GroupOutcome& outcome);
    /// Counts add, so merging is associative and commutative.
    void merge(const StatisticState& other);

    /// WinFrequency of an id with no trials is 0. NegMeanRuntime of an id
    /// without an uncensored observation is -timeout.
    double score(ConfigId id, StatisticKind kind, double timeout) const;

    ArmStats stats(ConfigId id) const;
    const std::map<ConfigId, ArmStats>& arms() const noexcept { return arms_; }

private:
    std::map<ConfigId, ArmStats> arms_;
};

StatisticState stat_update(StatisticState state, const GroupOutcome& outcome);
double stat_score(const StatisticState& state, ConfigId id, StatisticKind kind, double timeout);

}  // namespace acband
