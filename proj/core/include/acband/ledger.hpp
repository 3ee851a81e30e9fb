#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace acband {

/// Accumulated model CPU time of a run.
///
/// Charges are kept as integer microseconds so that totals are exact and
/// independent of the order in which partial ledgers are merged.
class CpuLedger {
public:
    static std::int64_t to_micros(double seconds);

    void credit(int epoch, int round, std::int64_t micros);
    void merge(const CpuLedger& other);

    std::int64_t total_micros() const noexcept { return total_; }
    double total_seconds() const noexcept { return static_cast<double>(total_) * 1e-6; }
    std::int64_t epoch_micros(int epoch) const;

    /// (epoch, round) -> microseconds.
    const std::map<std::pair<int, int>, std::int64_t>& breakdown() const noexcept { return by_round_; }

    friend bool operator==(const CpuLedger&, const CpuLedger&) = default;

private:
    std::int64_t total_ = 0;
    std::map<std::pair<int, int>, std::int64_t> by_round_;
};

}  // namespace acband
