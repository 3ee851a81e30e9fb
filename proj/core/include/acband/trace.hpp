#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "acband/ledger.hpp"
#include "acband/oracle.hpp"
#include "acband/types.hpp"

namespace acband {

/// One capped group evaluation inside CSE.
struct EvaluationRecord {
    int epoch = 0;
    int round = 0;
    int partition = 0;
    GroupOutcome outcome;
};

/// End of one ArmElimination call.
struct EliminationRecord {
    int epoch = 0;
    int round = 0;
    int partition = 0;
    std::vector<ConfigId> kept;
    std::vector<ConfigId> dropped;
};

/// One uncapped individual run (Hyperband).
struct SingleRunRecord {
    int bracket = 0;
    int rung = 0;
    ConfigId config;
    InstanceId instance;
    double runtime = 0.0;
    /// The instance had already been shown to this configuration.
    bool reused = false;
};

using TraceEvent = std::variant<EvaluationRecord, EliminationRecord, SingleRunRecord>;

/// Mutable bookkeeping shared by every evaluation of one configurator run:
/// the CPU ledger, the event trace and the set of consumed instances.
class RunContext {
public:
    explicit RunContext(std::size_t n_instances, unsigned threads = 1);

    /// Marks instances as consumed; throws InstanceReuse if any was used before.
    void reserve_instances(std::span<const InstanceId> instances);
    bool consumed(InstanceId instance) const;

    void commit(EvaluationRecord record);
    void record(EliminationRecord record);
    void commit(SingleRunRecord record);

    const CpuLedger& ledger() const noexcept { return ledger_; }
    const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
    std::vector<TraceEvent> take_trace() { return std::move(trace_); }

    int epoch = 0;
    /// Upper bound on concurrently evaluated groups within one round.
    unsigned threads = 1;

private:
    std::vector<bool> consumed_;
    CpuLedger ledger_;
    std::vector<TraceEvent> trace_;
};

}  // namespace acband
