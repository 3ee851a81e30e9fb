#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acband/hyperband_plan.hpp"
#include "acband/ledger.hpp"
#include "acband/schedule.hpp"
#include "acband/trace.hpp"
#include "acband/types.hpp"

namespace acband {

/// One AC-Band epoch, or one Hyperband bracket.
struct EpochRecord {
    int index = 0;
    std::vector<ConfigId> configs;
    ConfigId winner;
    std::int64_t instances_used = 0;
};

struct RunResult {
    std::string method;
    std::uint64_t seed = 0;
    ConfigId winner;
    CpuLedger ledger;
    std::vector<EpochRecord> epochs;
    /// Every configuration the run looked at, in sampling order.
    std::vector<ConfigId> sampled;
    std::vector<TraceEvent> trace;
    /// Configurations run side by side per instance (1 for Hyperband).
    int group_size = 1;

    std::optional<ACBandParams> acband_params;
    std::optional<EpochSchedule> acband_schedule;
    std::optional<HyperbandParams> hyperband_params;
    std::optional<BracketPlan> hyperband_plan;

    std::int64_t instances_used() const;
    /// CPU time divided by the number of parallel slots.
    double wall_clock_proxy() const { return ledger.total_seconds() / group_size; }
};

}  // namespace acband
