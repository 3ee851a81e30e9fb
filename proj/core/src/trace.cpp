#include "acband/trace.hpp"

#include <string>

#include "acband/error.hpp"

namespace acband {

RunContext::RunContext(std::size_t n_instances, unsigned threads_) : threads(threads_ == 0 ? 1 : threads_), consumed_(n_instances, false) {}

void RunContext::reserve_instances(std::span<const InstanceId> instances) {
    for (InstanceId id : instances) {
        if (id.index() >= consumed_.size())
            raise(Errc::IndexOutOfRange, "instance " + std::to_string(id.value) + " outside the oracle");
        if (consumed_[id.index()]) raise(Errc::InstanceReuse, "instance " + std::to_string(id.value) + " was already consumed in this run");
        consumed_[id.index()] = true;
    }
}

bool RunContext::consumed(InstanceId instance) const {
    return instance.index() < consumed_.size() && consumed_[instance.index()];
}

void RunContext::commit(EvaluationRecord record) {
    ledger_.credit(record.epoch, record.round, record.outcome.cpu_charge_micros());
    trace_.emplace_back(std::move(record));
}

void RunContext::record(EliminationRecord record) { trace_.emplace_back(std::move(record)); }

void RunContext::commit(SingleRunRecord record) {
    ledger_.credit(record.bracket, record.rung, CpuLedger::to_micros(record.runtime));
    trace_.emplace_back(std::move(record));
}

}  // namespace acband
