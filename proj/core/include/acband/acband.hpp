#pragma once

#include "acband/oracle.hpp"
#include "acband/run_result.hpp"
#include "acband/schedule.hpp"
#include "acband/statistics.hpp"
#include "acband/types.hpp"

namespace acband {

/// Fills n0 (default 2 * N_{alpha,delta}) and budget (default: every
/// instance of the oracle). Throws PoolExhausted if the budget exceeds the
/// instance count.
ACBandParams resolve_acband_params(ACBandParams params, const CostOracle& oracle);

/// Iterated CSE. Samples theta_0, then per epoch e draws n_e - 1 unseen
/// configurations and floor(B / c_e) unused instances, runs CSE with rho_e on
/// the previous winner plus the new draws, and carries the winner forward.
///
/// The result is a pure function of (params, oracle content, statistic);
/// `threads` only changes how many groups of a round are evaluated at once.
RunResult run_acband(const ACBandParams& params, const CostOracle& oracle,
                     StatisticKind statistic = StatisticKind::WinFrequency, unsigned threads = 1);

}  // namespace acband
