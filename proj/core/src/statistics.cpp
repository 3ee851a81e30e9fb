#include "acband/statistics.hpp"

namespace acband {

void StatisticState::update(const GroupOutcome& outcome) {
    for (ConfigId id : outcome.participants) ++arms_[id].trials;
    if (outcome.winner) {
        ArmStats& w = arms_[*outcome.winner];
        ++w.wins;
        w.runtime_sum += outcome.winner_runtime.value_or(outcome.finish_time);
        ++w.observations;
    }
}

void StatisticState::merge(const StatisticState& other) {
    for (const auto& [id, s] : other.arms_) {
        ArmStats& mine = arms_[id];
        mine.wins += s.wins;
        mine.trials += s.trials;
        mine.runtime_sum += s.runtime_sum;
        mine.observations += s.observations;
    }
}

double StatisticState::score(ConfigId id, StatisticKind kind, double timeout) const {
    const ArmStats s = stats(id);
    switch (kind) {
        case StatisticKind::WinFrequency:
            return s.trials == 0 ? 0.0 : static_cast<double>(s.wins) / static_cast<double>(s.trials);
        case StatisticKind::NegMeanRuntime:
            return s.observations == 0 ? -timeout : -s.runtime_sum / static_cast<double>(s.observations);
    }
    return 0.0;
}

ArmStats StatisticState::stats(ConfigId id) const {
    const auto it = arms_.find(id);
    return it == arms_.end() ? ArmStats{} : it->second;
}

StatisticState stat_update(StatisticState state, const GroupOutcome& outcome) {
    state.update(outcome);
    return state;
}

double stat_score(const StatisticState& state, ConfigId id, StatisticKind kind, double timeout) {
    return state.score(id, kind, timeout);
}

}  // namespace acband
