#include "acband/oracle.hpp"

#include <algorithm>

#include "acband/error.hpp"
#include "acband/ledger.hpp"
#include "acband/ranking.hpp"

namespace acband {

std::int64_t GroupOutcome::cpu_charge_micros() const {
    return static_cast<std::int64_t>(participants.size()) * CpuLedger::to_micros(finish_time);
}

GroupOutcome evaluate_group(const RuntimeMatrix& matrix, std::span<const ConfigId> group, InstanceId instance,
                            SeededRng& rng) {
    if (group.size() < 2) raise(Errc::InvalidArgument, "a parallel group needs at least two configurations");
    matrix.check_instance(instance);
    for (std::size_t i = 0; i < group.size(); ++i) {
        matrix.check_config(group[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (group[i] == group[j]) raise(Errc::InvalidArgument, "config " + std::to_string(group[i].value) + " appears twice in a group");
    }

    GroupOutcome outcome;
    outcome.instance = instance;
    outcome.participants.assign(group.begin(), group.end());

    double fastest = matrix.timeout();
    std::size_t n_fastest = 0;
    for (ConfigId id : group) {
        const double t = matrix(id.index(), instance.index());
        if (t < fastest) {
            fastest = t;
            n_fastest = 1;
        } else if (t == fastest) {
            ++n_fastest;
        }
    }
    outcome.finish_time = fastest;
    outcome.cpu_charge = static_cast<double>(group.size()) * fastest;

    if (fastest < matrix.timeout()) {
        if (n_fastest == 1) {
            for (ConfigId id : group)
                if (matrix(id.index(), instance.index()) == fastest) outcome.winner = id;
        } else {
            std::vector<ScoredConfig> tied;
            for (ConfigId id : group) {
                const double t = matrix(id.index(), instance.index());
                if (t == fastest) tied.emplace_back(id, -t);
            }
            outcome.winner = rank_with_ties(tied, rng).front();
        }
        outcome.winner_runtime = fastest;
    }
    return outcome;
}

}  // namespace acband
