#include "acband/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acband/error.hpp"
#include "acband/rng.hpp"

namespace acband {

namespace {

// lambda_min * timeout >= this keeps P(runtime > timeout) = exp(-14) < 1e-6.
constexpr double kTimeoutMargin = 14.0;
// Drawn values below this are clamped so every entry stays positive.
constexpr double kMinRuntime = 1e-9;

std::size_t epsilon_best_count(std::size_t n, double alpha) {
    const double exact = alpha * static_cast<double>(n);
    auto count = static_cast<std::size_t>(std::ceil(exact));
    if (exact - std::floor(exact) < 1e-9) count = static_cast<std::size_t>(std::floor(exact));
    return count;
}

}  // namespace

double SyntheticScenario::win_probability(ConfigId config, std::span<const ConfigId> group) const {
    double total = 0.0;
    bool member = false;
    for (ConfigId g : group) {
        if (g.index() >= lambdas.size()) raise(Errc::IndexOutOfRange, "config " + std::to_string(g.value) + " outside the scenario");
        total += lambdas[g.index()];
        member = member || g == config;
    }
    if (!member) raise(Errc::InvalidArgument, "config " + std::to_string(config.value) + " is not in the group");
    return lambdas[config.index()] / total;
}

std::vector<double> exponential_rates(std::size_t n_configs, double target_alpha, double epsilon, double timeout,
                                      std::uint64_t seed) {
    if (n_configs < 2) raise(Errc::InvalidArgument, "a scenario needs at least two configurations");
    if (!(target_alpha > 0.0 && target_alpha < 1.0)) raise(Errc::DomainError, "target alpha must lie in (0, 1)");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) raise(Errc::DomainError, "epsilon must be non-negative");
    if (!(timeout > 0.0)) raise(Errc::DomainError, "timeout must be positive");

    const std::size_t count = epsilon_best_count(n_configs, target_alpha);
    if (count < 1 || count > n_configs)
        raise(Errc::InfeasibleAlpha, "alpha " + std::to_string(target_alpha) + " gives " + std::to_string(count) + " of " +
                                         std::to_string(n_configs) + " configurations");
    // c is epsilon-best iff lambda_c / lambda_max >= tau.
    const double tau = (1.0 - epsilon) / (1.0 + epsilon);
    if (tau <= 0.0 && count < n_configs)
        raise(Errc::InfeasibleAlpha, "epsilon " + std::to_string(epsilon) + " makes every configuration epsilon-best");

    SeededRng rng = SeededRng(seed).fork("rates");
    std::vector<double> ratios(n_configs);
    const double good_lo = std::max(tau, 0.0) + 0.25 * (1.0 - std::max(tau, 0.0));
    ratios[0] = 1.0;
    for (std::size_t i = 1; i < count; ++i) ratios[i] = epsilon == 0.0 ? 1.0 : good_lo + (1.0 - good_lo) * rng.uniform01();
    const double bad_hi = 0.8 * tau;
    for (std::size_t i = count; i < n_configs; ++i) ratios[i] = 0.25 * bad_hi + 0.75 * bad_hi * rng.uniform01();
    rng.shuffle(std::span<double>(ratios));

    const double min_ratio = *std::min_element(ratios.begin(), ratios.end());
    const double lambda_max = kTimeoutMargin / (min_ratio * timeout);
    std::vector<double> lambdas(n_configs);
    for (std::size_t i = 0; i < n_configs; ++i) lambdas[i] = ratios[i] * lambda_max;
    return lambdas;
}

SyntheticScenario generate_exponential_scenario(const ExponentialScenarioSpec& spec) {
    if (spec.n_instances < 1) raise(Errc::InvalidArgument, "a scenario needs at least one instance");
    SyntheticScenario s;
    s.lambdas = exponential_rates(spec.n_configs, spec.target_alpha, spec.epsilon, spec.timeout, spec.seed);
    s.epsilon = spec.epsilon;
    s.seed = spec.seed;
    s.alpha_realized = static_cast<double>(epsilon_best_set(s.lambdas, spec.epsilon).size()) / static_cast<double>(spec.n_configs);

    SeededRng rng = SeededRng(spec.seed).fork("matrix");
    std::vector<double> values(spec.n_configs * spec.n_instances);
    for (std::size_t c = 0; c < spec.n_configs; ++c)
        for (std::size_t i = 0; i < spec.n_instances; ++i)
            values[c * spec.n_instances + i] = std::clamp(rng.exponential(s.lambdas[c]), kMinRuntime, spec.timeout);
    s.matrix = RuntimeMatrix(spec.n_configs, spec.n_instances, spec.timeout, std::move(values));
    return s;
}

std::vector<ConfigId> epsilon_best_set(std::span<const double> lambdas, double epsilon) {
    if (lambdas.empty()) return {};
    const double top = *std::max_element(lambdas.begin(), lambdas.end());
    std::vector<ConfigId> out;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if ((top - lambdas[i]) / (top + lambdas[i]) <= epsilon) out.emplace_back(static_cast<std::uint32_t>(i));
    return out;
}

std::vector<ConfigId> epsilon_best_set(const SyntheticScenario& scenario) {
    return epsilon_best_set(scenario.lambdas, scenario.epsilon);
}

std::vector<double> exponential_group_gaps(std::span<const double> lambdas, std::span<const ConfigId> group) {
    double total = 0.0;
    double top = 0.0;
    for (ConfigId g : group) {
        if (g.index() >= lambdas.size()) raise(Errc::IndexOutOfRange, "config " + std::to_string(g.value) + " outside the scenario");
        total += lambdas[g.index()];
        top = std::max(top, lambdas[g.index()]);
    }
    std::vector<double> gaps;
    gaps.reserve(group.size());
    for (ConfigId g : group) gaps.push_back((top - lambdas[g.index()]) / total);
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

RuntimeMatrix generate_heavy_tailed_matrix(const HeavyTailSpec& spec) {
    if (spec.n_configs < 1 || spec.n_instances < 1) raise(Errc::InvalidArgument, "matrix dimensions must be positive");
    if (!(spec.timeout > 0.0) || !(spec.median_runtime > 0.0)) raise(Errc::DomainError, "timeout and median runtime must be positive");

    const SeededRng root(spec.seed);
    SeededRng config_rng = root.fork("configs");
    SeededRng instance_rng = root.fork("instances");
    SeededRng noise_rng = root.fork("noise");

    std::vector<double> base(spec.n_configs);
    for (double& b : base) b = spec.median_runtime * std::exp(spec.config_sigma * config_rng.standard_normal());
    std::vector<double> hardness(spec.n_instances);
    for (double& h : hardness) h = std::exp(spec.instance_sigma * instance_rng.standard_normal());

    std::vector<double> values(spec.n_configs * spec.n_instances);
    for (std::size_t c = 0; c < spec.n_configs; ++c)
        for (std::size_t i = 0; i < spec.n_instances; ++i) {
            const double v = base[c] * hardness[i] * std::exp(spec.noise_sigma * noise_rng.standard_normal());
            values[c * spec.n_instances + i] = std::clamp(v, kMinRuntime, spec.timeout);
        }
    return RuntimeMatrix(spec.n_configs, spec.n_instances, spec.timeout, std::move(values));
}

RuntimeMatrix parse_matrix_csv(const std::filesystem::path& path) { return load_runtime_matrix(path, MatrixFormat::Csv); }

}  // namespace acband
