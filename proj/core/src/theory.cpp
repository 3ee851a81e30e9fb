#include "acband/theory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "acband/cse.hpp"
#include "acband/error.hpp"
#include "acband/schedule.hpp"

namespace acband {

ConvergenceEnvelope ConvergenceEnvelope::constant(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) raise(Errc::DomainError, "envelope constant must be positive");
    return ConvergenceEnvelope([value](double) { return value; });
}

ConvergenceEnvelope ConvergenceEnvelope::hoeffding(double failure) {
    if (!(failure > 0.0 && failure < 1.0)) raise(Errc::DomainError, "Hoeffding failure probability must lie in (0, 1)");
    const double log_term = std::log(2.0 / failure);
    return ConvergenceEnvelope([log_term](double t) {
        if (!(t > 0.0)) raise(Errc::DomainError, "envelope accuracy must be positive");
        return std::ceil(log_term / (2.0 * t * t));
    });
}

ConvergenceEnvelope ConvergenceEnvelope::custom(Function fn) {
    if (!fn) raise(Errc::InvalidArgument, "empty envelope function");
    return ConvergenceEnvelope(std::move(fn));
}

double ConvergenceEnvelope::operator()(double t) const {
    const double v = fn_(t);
    if (!(v > 0.0)) raise(Errc::DomainError, "envelope returned a non-positive value");
    return v;
}

double acband_sufficient_budget(double alpha, double delta, std::int64_t n0, int k, double gamma_inv) {
    if (!(gamma_inv > 0.0)) raise(Errc::DomainError, "gamma_inv must be positive");
    const EpochConstants c = epoch_constants(alpha, delta, n0, k);
    return gamma_inv * (static_cast<double>(n0) / k) * c.allocation_numerator() / std::exp2(c.epochs);
}

double cse_sufficient_budget(double rho, int k, int n, double epsilon, const GapProfile& gaps,
                             const ConvergenceEnvelope& envelope) {
    if (!(epsilon > 0.0)) raise(Errc::DomainError, "epsilon must be positive");
    const CseSchedule s = cse_structure(rho, k, n);
    if (gaps.rounds.size() != static_cast<std::size_t>(s.rounds()))
        raise(Errc::MissingGapData, "gap profile covers " + std::to_string(gaps.rounds.size()) + " rounds, CSE runs " +
                                        std::to_string(s.rounds()));

    double worst = 0.0;
    bool any = false;
    for (std::size_t r = 0; r < gaps.rounds.size(); ++r) {
        const std::vector<double>& g = gaps.rounds[r];
        if (g.empty()) continue;
        if (g.size() < 2 || g.size() > static_cast<std::size_t>(k))
            raise(Errc::MissingGapData, "round " + std::to_string(r + 1) + " lists a group of " + std::to_string(g.size()));
        const auto f = static_cast<std::size_t>(f_rho(static_cast<int>(g.size()), rho));
        const double gap = f < g.size() ? g[f] : 0.0;
        worst = std::max(worst, envelope(std::max(epsilon / 2.0, gap / 2.0)));
        any = true;
    }
    if (!any) worst = envelope(epsilon / 2.0);
    return static_cast<double>(s.rounds()) * static_cast<double>(s.max_partitions()) * (1.0 + worst);
}

double epoch_fraction_sum(double alpha, double delta, std::int64_t n0, int k) {
    const EpochConstants c = epoch_constants(alpha, delta, n0, k);
    double sum = 0.0;
    for (int e = 1; e <= c.epochs; ++e) sum += 1.0 / c.allocation_quotient(e);
    return sum;
}

double lemma_closed_form(double a, double b, double c, int n) {
    if (n < 1) raise(Errc::DomainError, "N must be positive");
    const double p = std::exp2(n);
    return (a * n - (p - 1.0) * (2.0 * a - b - c)) / p;
}

double lemma_direct_sum(double a, double b, double c, int n) {
    if (n < 1) raise(Errc::DomainError, "N must be positive");
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) sum += (-i * a + b + c) / std::exp2(i);
    return sum;
}

std::int64_t apply_n0_rule(N0Rule rule, std::int64_t n) {
    switch (rule) {
        case N0Rule::Double: return 2 * n;
        case N0Rule::OneAndHalf: return std::max<std::int64_t>(n + 1, (3 * n) / 2);
        case N0Rule::PlusOne: return n + 1;
    }
    raise(Errc::InvalidArgument, "unknown n0 rule");
}

std::vector<BudgetRow> budget_curve(std::span<const int> ks, std::span<const double> alphas, std::span<const double> deltas,
                                    N0Rule rule, double gamma_inv) {
    if (ks.empty() || alphas.empty() || deltas.empty()) raise(Errc::InvalidArgument, "budget grid axes must be non-empty");
    std::vector<BudgetRow> rows;
    rows.reserve(ks.size() * alphas.size() * deltas.size());
    for (int k : ks) {
        for (double alpha : alphas) {
            for (double delta : deltas) {
                BudgetRow row;
                row.k = k;
                row.alpha = alpha;
                row.delta = delta;
                row.n0 = apply_n0_rule(rule, n_alpha_delta(alpha, delta));
                row.epochs = epoch_constants(alpha, delta, row.n0, k).epochs;
                row.budget = acband_sufficient_budget(alpha, delta, row.n0, k, gamma_inv);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_budget_csv(std::ostream& out, std::span<const BudgetRow> rows) {
    out << "k,alpha,delta,n0,E,budget\n";
    for (const BudgetRow& r : rows)
        out << r.k << ',' << shortest(r.alpha) << ',' << shortest(r.delta) << ',' << r.n0 << ',' << r.epochs << ','
            << shortest(r.budget) << '\n';
}

}  // namespace acband
