#include "acband/schedule.hpp"

#include <cmath>
#include <string>

#include "acband/error.hpp"

namespace acband {

namespace {

constexpr double kSnap = 1e-9;

std::int64_t ceil_snapped(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < kSnap * std::max(1.0, std::abs(x))) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t floor_snapped(double x) {
    double fl = std::floor(x);
    if (x - fl > 1.0 - kSnap * std::max(1.0, std::abs(x))) fl += 1.0;
    return static_cast<std::int64_t>(fl);
}

double log_base(double base, double x) { return std::log(x) / std::log(base); }

}  // namespace

std::int64_t n_alpha_delta(double alpha, double delta) {
    if (!(alpha > 0.0 && alpha < 1.0)) raise(Errc::DomainError, "alpha must lie in (0, 1), got " + std::to_string(alpha));
    if (!(delta > 0.0 && delta < 1.0)) raise(Errc::DomainError, "delta must lie in (0, 1), got " + std::to_string(delta));
    return ceil_snapped(std::log(delta) / std::log1p(-alpha));
}

double EpochConstants::allocation_numerator() const {
    return c1 * epochs - (std::exp2(epochs) - 1.0) * (2.0 * c1 - c2 - c3);
}

double EpochConstants::allocation_quotient(int epoch) const {
    return allocation_numerator() * std::exp2(epoch) / (std::exp2(epochs) * (-epoch * c1 + c2 + c3));
}

int EpochConstants::epoch_size(int epoch) const {
    // ceil(n0 / 2^e) in integers.
    const std::int64_t denom = std::int64_t{1} << epoch;
    return static_cast<int>((n0 + denom - 1) / denom + 1);
}

double EpochConstants::epoch_rho(int epoch) const {
    return std::log2(static_cast<double>(epoch + k - 1) / static_cast<double>(epoch));
}

EpochConstants epoch_constants(double alpha, double delta, std::int64_t n0, int k) {
    if (k < 2) raise(Errc::DomainError, "group size k must be at least 2, got " + std::to_string(k));
    EpochConstants c;
    c.alpha = alpha;
    c.delta = delta;
    c.n_alpha_delta = n_alpha_delta(alpha, delta);
    c.n0 = n0;
    c.k = k;
    const std::int64_t big_n = c.n_alpha_delta;
    if (n0 <= big_n || n0 > 2 * big_n)
        raise(Errc::InvalidN0, "n0 = " + std::to_string(n0) + " must lie in (N, 2N] = (" + std::to_string(big_n) + ", " +
                                   std::to_string(2 * big_n) + "]");

    const double ratio = static_cast<double>(n0) / static_cast<double>(n0 - big_n);
    c.epochs = static_cast<int>(ceil_snapped(std::log2(ratio)));
    if (c.epochs > 60) raise(Errc::InvalidN0, "n0 = " + std::to_string(n0) + " yields more than 60 epochs");
    c.q = 1.0 + static_cast<double>(k - 1) / c.epochs;
    c.c1 = log_base(c.q, 2.0);
    c.c2 = 1.0 + log_base(c.q, static_cast<double>(n0) + 4.0 * static_cast<double>(n0) / static_cast<double>(n0 - big_n));
    c.c3 = static_cast<double>(ceil_snapped(log_base(c.q, static_cast<double>(k))));
    return c;
}

std::int64_t EpochSchedule::total_sampled() const {
    std::int64_t total = 1;
    for (const EpochPlan& e : epochs) total += e.n - 1;
    return total;
}

std::int64_t EpochSchedule::total_epoch_budget() const {
    std::int64_t total = 0;
    for (const EpochPlan& e : epochs) total += e.budget;
    return total;
}

double EpochSchedule::fraction_sum() const {
    double total = 0.0;
    for (const EpochPlan& e : epochs) total += 1.0 / e.quotient;
    return total;
}

EpochSchedule epoch_schedule(double alpha, double delta, std::int64_t n0, int k, std::int64_t budget) {
    if (budget < 1) raise(Errc::InsufficientBudget, "budget must be at least 1");
    EpochSchedule s;
    s.constants = epoch_constants(alpha, delta, n0, k);
    s.budget = budget;
    for (int e = 1; e <= s.constants.epochs; ++e) {
        EpochPlan plan;
        plan.index = e;
        plan.n = s.constants.epoch_size(e);
        plan.rho = s.constants.epoch_rho(e);
        plan.quotient = s.constants.allocation_quotient(e);
        plan.budget = floor_snapped(static_cast<double>(budget) / plan.quotient);
        try {
            plan.cse = cse_schedule(plan.rho, k, plan.n, plan.budget);
        } catch (const Error& err) {
            if (err.code() != Errc::InsufficientBudget) throw;
            raise(Errc::InsufficientBudget, "epoch " + std::to_string(e) + " receives " + std::to_string(plan.budget) +
                                                " instances, its CSE call needs at least " +
                                                std::to_string(cse_minimum_budget(plan.rho, k, plan.n)));
        }
        s.epochs.push_back(std::move(plan));
    }
    if (s.total_epoch_budget() > budget)
        raise(Errc::InsufficientBudget, "epoch budgets exceed the total budget after rounding");
    return s;
}

}  // namespace acband
