#pragma once

#include <cstdint>
#include <vector>

#include "acband/cse.hpp"

namespace acband {

/// ceil(ln(delta) / ln(1 - alpha)): sample size that contains an
/// epsilon-best configuration with probability at least 1 - delta when their
/// proportion is alpha. Throws DomainError outside (0, 1).
std::int64_t n_alpha_delta(double alpha, double delta);

/// Budget-independent constants of the epoch controller.
struct EpochConstants {
    double alpha = 0.0;
    double delta = 0.0;
    std::int64_t n_alpha_delta = 0;
    std::int64_t n0 = 0;
    int k = 0;
    int epochs = 0;  // E
    double q = 0.0;  // 1 + (k - 1) / E
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    /// C1 * E - (2^E - 1) * (2 C1 - C2 - C3), shared numerator of every c_e.
    double allocation_numerator() const;
    /// c_e; epoch e receives floor(B / c_e) instances.
    double allocation_quotient(int epoch) const;
    /// ceil(n0 / 2^e) + 1.
    int epoch_size(int epoch) const;
    /// log2((e + k - 1) / e).
    double epoch_rho(int epoch) const;
};

/// Throws InvalidN0 unless n0 lies in (N, 2N].
EpochConstants epoch_constants(double alpha, double delta, std::int64_t n0, int k);

struct EpochPlan {
    int index = 0;  // 1-based
    int n = 0;
    double rho = 0.0;
    double quotient = 0.0;
    std::int64_t budget = 0;
    CseSchedule cse;
};

struct EpochSchedule {
    EpochConstants constants;
    std::int64_t budget = 0;
    std::vector<EpochPlan> epochs;

    /// 1 + sum_e (n_e - 1): the initial draw plus the fresh samples of each epoch.
    std::int64_t total_sampled() const;
    std::int64_t total_epoch_budget() const;
    /// sum_e 1 / c_e.
    double fraction_sum() const;
};

/// Throws InvalidN0, DomainError, or InsufficientBudget if some epoch's
/// share cannot fund its CSE call.
EpochSchedule epoch_schedule(double alpha, double delta, std::int64_t n0, int k, std::int64_t budget);

}  // namespace acband
