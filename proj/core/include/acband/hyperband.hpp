#pragma once

#include "acband/hyperband_plan.hpp"
#include "acband/oracle.hpp"
#include "acband/run_result.hpp"

namespace acband {

/// Fills n_max (hb_default_n_max over the configuration pool) and budget
/// (the oracle's instance count).
HyperbandParams resolve_hyperband_params(HyperbandParams params, const CostOracle& oracle);

/// Hyperband over instances as the resource, without capping.
///
/// Each bracket draws fresh configurations (disjoint across brackets) and its
/// own instance order. A configuration promoted to r_i only runs the
/// instances r_{i-1} .. r_i - 1 of that order; the loss is the mean runtime
/// over everything it has seen. Instances are reused, and flagged in the
/// trace, only when r_i exceeds the instance count. Every run is charged its
/// full runtime. The winner is the lowest mean over all evaluated configurations.
RunResult run_hyperband(const HyperbandParams& params, const CostOracle& oracle);

}  // namespace acband
