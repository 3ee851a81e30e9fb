#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "acband/runtime_matrix.hpp"
#include "acband/types.hpp"

namespace acband {

/// Exponential runtime model: configuration c solves a fresh instance in
/// Exponential(lambdas[c]) seconds, so c wins a group G with probability
/// lambdas[c] / sum_{g in G} lambdas[g].
struct SyntheticScenario {
    std::vector<double> lambdas;
    double epsilon = 0.0;
    double alpha_realized = 0.0;
    std::uint64_t seed = 0;
    RuntimeMatrix matrix;

    /// Limit win frequency of `config` inside `group`.
    double win_probability(ConfigId config, std::span<const ConfigId> group) const;
};

struct ExponentialScenarioSpec {
    std::size_t n_configs = 0;
    std::size_t n_instances = 0;
    double target_alpha = 0.1;
    double epsilon = 0.1;
    double timeout = 900.0;
    std::uint64_t seed = 0;
};

/// Rates such that exactly ceil(target_alpha * n) configurations are
/// epsilon-best, then a matrix of exponential draws truncated at the
/// timeout. Rates are scaled so every configuration times out with
/// probability below 1e-6. Throws InfeasibleAlpha when the count cannot
/// be met (e.g. epsilon >= 1 makes every configuration epsilon-best).
SyntheticScenario generate_exponential_scenario(const ExponentialScenarioSpec& spec);

/// Only the rates, without drawing a matrix.
std::vector<double> exponential_rates(std::size_t n_configs, double target_alpha, double epsilon, double timeout,
                                      std::uint64_t seed);

/// { c : (lambda_max - lambda_c) / (lambda_max + lambda_c) <= epsilon }, ascending ids.
/// The pair {c, argmax} is the worst group for c, so no enumeration is needed.
std::vector<ConfigId> epsilon_best_set(std::span<const double> lambdas, double epsilon);
std::vector<ConfigId> epsilon_best_set(const SyntheticScenario& scenario);

/// S_(1) - S_(i) over the members of `group`, ascending.
std::vector<double> exponential_group_gaps(std::span<const double> lambdas, std::span<const ConfigId> group);

/// runtime(c, i) = base_c * hardness_i * noise_ci with lognormal factors,
/// truncated at the timeout. Used to compare capped and uncapped
/// configurators on realistic spreads.
struct HeavyTailSpec {
    std::size_t n_configs = 0;
    std::size_t n_instances = 0;
    double timeout = 300.0;
    double median_runtime = 5.0;
    double config_sigma = 1.0;
    double instance_sigma = 1.0;
    double noise_sigma = 1.0;
    std::uint64_t seed = 0;
};

RuntimeMatrix generate_heavy_tailed_matrix(const HeavyTailSpec& spec);

/// load_runtime_matrix for a CSV file.
RuntimeMatrix parse_matrix_csv(const std::filesystem::path& path);

}  // namespace acband
