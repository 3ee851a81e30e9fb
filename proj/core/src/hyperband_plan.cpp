#include "acband/hyperband_plan.hpp"

#include <algorithm>
#include <string>

#include "acband/error.hpp"

namespace acband {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<Bracket> brackets_for(int eta, int s_max, std::int64_t max_resource) {
    std::vector<Bracket> out;
    for (int s = s_max; s >= 0; --s) {
        Bracket b;
        b.s = s;
        const std::int64_t eta_s = ipow(eta, s);
        const std::int64_t n = ((s_max + 1) * eta_s + s) / (s + 1);
        for (int i = 0; i <= s; ++i) {
            Rung rung;
            rung.n = n / ipow(eta, i);
            rung.r = std::max<std::int64_t>(1, max_resource * ipow(eta, i) / eta_s);
            b.rungs.push_back(rung);
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::int64_t evaluations_of(const std::vector<Bracket>& brackets) {
    std::int64_t total = 0;
    for (const Bracket& b : brackets) total += b.evaluations();
    return total;
}

}  // namespace

std::int64_t Bracket::evaluations() const {
    std::int64_t total = 0;
    std::int64_t seen = 0;
    for (const Rung& rung : rungs) {
        total += rung.n * (rung.r - seen);
        seen = rung.r;
    }
    return total;
}

std::int64_t BracketPlan::total_evaluations() const { return evaluations_of(brackets); }

std::int64_t BracketPlan::total_configs() const {
    std::int64_t total = 0;
    for (const Bracket& b : brackets) total += b.rungs.front().n;
    return total;
}

int hb_s_max(int eta, std::int64_t n_max) {
    if (eta < 2) raise(Errc::DomainError, "eta must be at least 2, got " + std::to_string(eta));
    if (n_max < 1) raise(Errc::DomainError, "n_max must be positive, got " + std::to_string(n_max));
    int s = 0;
    for (std::int64_t p = 1; p < n_max; p *= eta) ++s;
    return s;
}

BracketPlan hb_plan(const HyperbandParams& params) {
    BracketPlan plan;
    plan.eta = params.eta;
    plan.n_max = params.n_max;
    plan.budget = params.budget;
    plan.s_max = hb_s_max(params.eta, params.n_max);
    if (params.budget < 1) raise(Errc::BudgetTooSmall, "Hyperband budget must be positive");

    if (evaluations_of(brackets_for(params.eta, plan.s_max, 1)) > params.budget)
        raise(Errc::BudgetTooSmall, "budget " + std::to_string(params.budget) + " cannot fund one run per sampled configuration (" +
                                        std::to_string(evaluations_of(brackets_for(params.eta, plan.s_max, 1))) + " needed)");

    // Evaluation count is non-decreasing in R; find the largest R that fits.
    std::int64_t lo = 1, hi = params.budget;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (evaluations_of(brackets_for(params.eta, plan.s_max, mid)) <= params.budget)
            lo = mid;
        else
            hi = mid - 1;
    }
    plan.max_resource = lo;
    plan.brackets = brackets_for(params.eta, plan.s_max, lo);
    return plan;
}

std::int64_t hb_default_n_max(int eta, std::int64_t pool) {
    if (pool < 1) raise(Errc::PoolExhausted, "no configurations available");
    std::int64_t best = 1;
    for (std::int64_t candidate = 1;; candidate *= eta) {
        const int s_max = hb_s_max(eta, candidate);
        std::int64_t configs = 0;
        for (const Bracket& b : brackets_for(eta, s_max, 1)) configs += b.rungs.front().n;
        if (configs > pool) break;
        best = candidate;
        if (candidate > pool) break;
    }
    return best;
}

}  // namespace acband
