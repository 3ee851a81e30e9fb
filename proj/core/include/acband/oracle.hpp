#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "acband/rng.hpp"
#include "acband/runtime_matrix.hpp"
#include "acband/types.hpp"

namespace acband {

/// Result of running a group of configurations in parallel on one instance,
/// stopping everyone as soon as the first member finishes.
struct GroupOutcome {
    InstanceId instance;
    std::vector<ConfigId> participants;
    /// Present iff the finisher beat the timeout.
    std::optional<ConfigId> winner;
    std::optional<double> winner_runtime;
    /// min(fastest runtime, timeout): how long every member was running.
    double finish_time = 0.0;
    /// participants.size() * finish_time, in seconds.
    double cpu_charge = 0.0;

    std::int64_t cpu_charge_micros() const;
};

/// Capped parallel evaluation against a runtime table. Runtime ties among the
/// fastest members are broken with rank_with_ties on the negated runtime.
/// Throws InvalidArgument for groups smaller than two or with duplicates,
/// IndexOutOfRange for unknown ids.
GroupOutcome evaluate_group(const RuntimeMatrix& matrix, std::span<const ConfigId> group, InstanceId instance,
                            SeededRng& rng);

/// Source of costs c(i, theta). Implementations must be safe to call
/// concurrently from several threads.
class CostOracle {
public:
    virtual ~CostOracle() = default;

    virtual std::size_t n_configs() const = 0;
    virtual std::size_t n_instances() const = 0;
    virtual double timeout() const = 0;

    virtual GroupOutcome evaluate_group(std::span<const ConfigId> group, InstanceId instance, SeededRng& rng) const = 0;
    /// Uncapped run of a single configuration; returns seconds, at most the timeout.
    virtual double evaluate_single(ConfigId config, InstanceId instance) const = 0;
    /// The backing table when costs are precomputed, for post-hoc metrics.
    virtual const RuntimeMatrix* matrix() const { return nullptr; }
};

/// Table look-up oracle. Holds a reference; the matrix must outlive it.
class MatrixOracle final : public CostOracle {
public:
    explicit MatrixOracle(const RuntimeMatrix& matrix) : matrix_(&matrix) {}

    std::size_t n_configs() const override { return matrix_->n_configs(); }
    std::size_t n_instances() const override { return matrix_->n_instances(); }
    double timeout() const override { return matrix_->timeout(); }

    GroupOutcome evaluate_group(std::span<const ConfigId> group, InstanceId instance, SeededRng& rng) const override {
        return acband::evaluate_group(*matrix_, group, instance, rng);
    }
    double evaluate_single(ConfigId config, InstanceId instance) const override { return matrix_->at(config, instance); }
    const RuntimeMatrix* matrix() const override { return matrix_; }

private:
    const RuntimeMatrix* matrix_;
};

}  // namespace acband
