#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace acband {

/// gamma^-1(t): evaluations after which a statistic is within t of its limit.
class ConvergenceEnvelope {
public:
    using Function = std::function<double(double)>;

    /// Ignores t, as the budget plots do.
    static ConvergenceEnvelope constant(double value);
    /// ceil(ln(2 / failure) / (2 t^2)): Hoeffding's bound for a frequency in [0, 1].
    static ConvergenceEnvelope hoeffding(double failure);
    static ConvergenceEnvelope custom(Function fn);

    double operator()(double t) const;

private:
    explicit ConvergenceEnvelope(Function fn) : fn_(std::move(fn)) {}
    Function fn_;
};

/// Suboptimality gaps along the best arm's path through CSE.
///
/// rounds[r] holds S_(1) - S_(i) for every member of the best arm's group in
/// round r, ascending (so rounds[r][0] == 0). An empty entry marks a round in
/// which the best arm sat in the pass-through group.
struct GapProfile {
    std::vector<std::vector<double>> rounds;
};

/// gamma_inv * (n0 / k) * (C1 E - (2^E - 1)(2 C1 - C2 - C3)) / 2^E.
double acband_sufficient_budget(double alpha, double delta, std::int64_t n0, int k, double gamma_inv);

/// z = R * max_r P_r * max_r (1 + gamma^-1(max(eps / 2, Delta_(f+1),r / 2))),
/// where f = f_rho(group size) of round r. Throws MissingGapData when the
/// profile does not cover every round of the schedule.
double cse_sufficient_budget(double rho, int k, int n, double epsilon, const GapProfile& gaps,
                             const ConvergenceEnvelope& envelope);

/// sum_e 1 / c_e; equals 1 up to rounding.
double epoch_fraction_sum(double alpha, double delta, std::int64_t n0, int k);

/// (a N - (2^N - 1)(2a - b - c)) / 2^N.
double lemma_closed_form(double a, double b, double c, int n);
/// sum_{i=1}^N (-i a + b + c) / 2^i.
double lemma_direct_sum(double a, double b, double c, int n);

enum class N0Rule {
    Double,      // 2N
    OneAndHalf,  // floor(1.5 N)
    PlusOne,     // N + 1
};

std::int64_t apply_n0_rule(N0Rule rule, std::int64_t n_alpha_delta);

struct BudgetRow {
    int k = 0;
    double alpha = 0.0;
    double delta = 0.0;
    std::int64_t n0 = 0;
    int epochs = 0;
    double budget = 0.0;
};

/// Sufficient AC-Band budget over the grid, ordered by k, then alpha, then delta.
std::vector<BudgetRow> budget_curve(std::span<const int> ks, std::span<const double> alphas, std::span<const double> deltas,
                                    N0Rule rule, double gamma_inv = 1.0);

/// Header `k,alpha,delta,n0,E,budget`, one line per row.
void write_budget_csv(std::ostream& out, std::span<const BudgetRow> rows);

}  // namespace acband
