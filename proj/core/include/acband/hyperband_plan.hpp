#pragma once

#include <cstdint>
#include <vector>

namespace acband {

struct HyperbandParams {
    int eta = 3;
    /// Largest configuration count of a bracket before rounding; 0 picks the
    /// largest power of eta whose plan still fits the configuration pool.
    std::int64_t n_max = 0;
    /// Total number of individual (configuration, instance) runs; 0 means
    /// the oracle's instance count.
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
};

struct Rung {
    std::int64_t n = 0;  // configurations evaluated at this rung
    std::int64_t r = 0;  // instances each of them has seen after the rung
};

struct Bracket {
    int s = 0;
    std::vector<Rung> rungs;

    /// Runs needed when promoted configurations only evaluate instances they
    /// have not seen: sum_i n_i * (r_i - r_{i-1}).
    std::int64_t evaluations() const;
};

struct BracketPlan {
    int eta = 0;
    int s_max = 0;
    std::int64_t n_max = 0;
    std::int64_t budget = 0;
    /// Hyperband's R: instances seen by a configuration that survives a bracket.
    std::int64_t max_resource = 0;
    std::vector<Bracket> brackets;  // s = s_max .. 0

    std::int64_t total_evaluations() const;
    std::int64_t total_configs() const;
};

/// Smallest s with eta^s >= n_max, i.e. ceil(log_eta(n_max)) in integers.
int hb_s_max(int eta, std::int64_t n_max);

/// Brackets with n = ceil((s_max + 1) / (s + 1) * eta^s) and the largest R
/// whose seen-adjusted evaluation count fits the budget. Throws
/// BudgetTooSmall when even R = 1 does not fit.
BracketPlan hb_plan(const HyperbandParams& params);

/// Largest eta^j whose plan draws at most `pool` configurations.
std::int64_t hb_default_n_max(int eta, std::int64_t pool);

}  // namespace acband
