#pragma once

#include <span>

#include "acband/runtime_matrix.hpp"
#include "acband/types.hpp"

namespace acband {

/// Sum of the configuration's row, in column order.
double total_runtime(const RuntimeMatrix& matrix, ConfigId config);

/// (T(config) - min T) / min T over all configurations. A ratio, not a percentage.
double percent_gap_to_best(const RuntimeMatrix& matrix, ConfigId config);

/// Same, relative to the best total within `subset`. Throws
/// ConfigNotInSubset when config is not listed.
double percent_gap_to_subset_best(const RuntimeMatrix& matrix, ConfigId config, std::span<const ConfigId> subset);

/// Mean of the ceil((1 - delta_m) * m) smallest runtimes of the row.
double r_delta_mean(const RuntimeMatrix& matrix, ConfigId config, double delta_m);

struct EvalReport {
    ConfigId winner;
    double total_runtime_winner = 0.0;
    double total_runtime_best = 0.0;
    double gap_to_best = 0.0;
    double gap_to_subset_best = 0.0;
    double delta_m = 0.1;
    double r_delta = 0.0;
    double cpu_time = 0.0;
};

EvalReport evaluate_winner(const RuntimeMatrix& matrix, ConfigId winner, std::span<const ConfigId> subset, double delta_m,
                           double cpu_time);

}  // namespace acband
