#include "acband/ledger.hpp"

#include <cmath>

#include "acband/error.hpp"

namespace acband {

std::int64_t CpuLedger::to_micros(double seconds) {
    if (!(seconds >= 0.0) || !std::isfinite(seconds)) raise(Errc::InvalidArgument, "CPU charge must be finite and non-negative");
    return std::llround(seconds * 1e6);
}

void CpuLedger::credit(int epoch, int round, std::int64_t micros) {
    total_ += micros;
    by_round_[{epoch, round}] += micros;
}

void CpuLedger::merge(const CpuLedger& other) {
    total_ += other.total_;
    for (const auto& [key, micros] : other.by_round_) by_round_[key] += micros;
}

std::int64_t CpuLedger::epoch_micros(int epoch) const {
    std::int64_t sum = 0;
    for (auto it = by_round_.lower_bound({epoch, INT32_MIN}); it != by_round_.end() && it->first.first == epoch; ++it)
        sum += it->second;
    return sum;
}

}  // namespace acband
