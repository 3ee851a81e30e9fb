#include "acband/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "acband/error.hpp"

namespace acband {

namespace {

double min_total(const RuntimeMatrix& matrix, std::span<const ConfigId> configs) {
    double best = std::numeric_limits<double>::infinity();
    for (ConfigId c : configs) best = std::min(best, total_runtime(matrix, c));
    return best;
}

std::vector<ConfigId> all_configs(const RuntimeMatrix& matrix) {
    std::vector<ConfigId> ids(matrix.n_configs());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = ConfigId(static_cast<std::uint32_t>(i));
    return ids;
}

}  // namespace

double total_runtime(const RuntimeMatrix& matrix, ConfigId config) {
    double sum = 0.0;
    for (double v : matrix.row(config)) sum += v;
    return sum;
}

double percent_gap_to_best(const RuntimeMatrix& matrix, ConfigId config) {
    const double mine = total_runtime(matrix, config);
    const double best = min_total(matrix, all_configs(matrix));
    return (mine - best) / best;
}

double percent_gap_to_subset_best(const RuntimeMatrix& matrix, ConfigId config, std::span<const ConfigId> subset) {
    if (std::find(subset.begin(), subset.end(), config) == subset.end())
        raise(Errc::ConfigNotInSubset, "config " + std::to_string(config.value) + " is not in the evaluated subset");
    const double mine = total_runtime(matrix, config);
    const double best = min_total(matrix, subset);
    return (mine - best) / best;
}

double r_delta_mean(const RuntimeMatrix& matrix, ConfigId config, double delta_m) {
    if (!(delta_m >= 0.0 && delta_m < 1.0)) raise(Errc::DomainError, "delta_m must lie in [0, 1)");
    std::span<const double> row = matrix.row(config);
    std::vector<double> sorted(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());

    const double exact = (1.0 - delta_m) * static_cast<double>(sorted.size());
    auto keep = static_cast<std::size_t>(std::ceil(exact));
    // A product a rounding error above an integer must not keep one more value.
    if (keep > 0 && exact - std::floor(exact) < 1e-9) keep = static_cast<std::size_t>(std::floor(exact));
    keep = std::clamp<std::size_t>(keep, 1, sorted.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < keep; ++i) sum += sorted[i];
    return sum / static_cast<double>(keep);
}

EvalReport evaluate_winner(const RuntimeMatrix& matrix, ConfigId winner, std::span<const ConfigId> subset, double delta_m,
                           double cpu_time) {
    EvalReport report;
    report.winner = winner;
    report.total_runtime_winner = total_runtime(matrix, winner);
    report.total_runtime_best = min_total(matrix, all_configs(matrix));
    report.gap_to_best = (report.total_runtime_winner - report.total_runtime_best) / report.total_runtime_best;
    report.gap_to_subset_best = percent_gap_to_subset_best(matrix, winner, subset);
    report.delta_m = delta_m;
    report.r_delta = r_delta_mean(matrix, winner, delta_m);
    report.cpu_time = cpu_time;
    return report;
}

}  // namespace acband
