#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "acband/metrics.hpp"
#include "acband/run_result.hpp"
#include "acband/synthetic.hpp"
#include "acband/trace.hpp"

namespace acband {

/// Result payload: winner, CPU totals, per-epoch records and the schedule
/// echo. Contains nothing time- or host-dependent, so equal runs give equal bytes.
std::string run_result_json(const RunResult& result);

/// One JSON object per line, in commit order.
void write_trace_jsonl(std::ostream& out, std::span<const TraceEvent> trace);

std::string eval_report_json(const EvalReport& report);
/// `winner,total_runtime_winner,total_runtime_best,gap_to_best,gap_to_best_percent,...`
std::string eval_report_csv(const EvalReport& report);

/// `{lambdas, epsilon, alpha_realized, seed}`.
std::string scenario_sidecar_json(const SyntheticScenario& scenario);

}  // namespace acband
