#include "meshecon/welfare_debt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace meshecon {

namespace {

/// Neumaier-compensated accumulator: keeps long sums of near-identical terms
/// at within one rounding of the exact value, so symmetric scenarios match
/// the product closed form bit-for-bit.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

bool uniform_profile(const Profile& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p.q[i] != p.q[0] || p.g[i] != p.g[0]) return false;
    return true;
}

}  // namespace

WelfareLossReport welfare_loss(const Scenario& s, const SolverOptions& opts) {
    WelfareLossReport report;
    report.nash = nash_equilibrium(s, opts);
    report.social_first_order =
        social_optimum(s, PlannerMode::first_order, opts);
    report.social_full = social_optimum(s, PlannerMode::full_objective, opts);

    report.per_domain_terms.resize(s.n_domains());
    double closed = 0.0;
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        const double q_star = report.nash.profile.q[i];
        const double g_ne = report.nash.profile.g[i];
        const double g_so = report.social_first_order.profile.g[i];
        const double externality =
            s.lambda_column_sum(i) + s.omega_column_sum(i);
        const double term =
            externality * q_star * (g_so - g_ne) -
            0.5 * s.domain(i).gamma_g * (g_so * g_so - g_ne * g_ne) * q_star;
        report.per_domain_terms[i] = term;
        closed += term;
    }
    report.closed_form = closed;
    report.direct = total_welfare(s, report.social_full.profile) -
                    total_welfare(s, report.nash.profile);
    report.discrepancy = std::abs(report.closed_form - report.direct);
    return report;
}

double pairwise_debt(double tau, double q_j, double g_j) {
    if (!(tau >= 0.0)) throw std::domain_error("tau must be >= 0");
    if (!(q_j >= 0.0 && q_j <= 1.0))
        throw std::domain_error("q outside [0, 1]");
    if (!(g_j >= 0.0 && g_j <= 1.0))
        throw std::domain_error("g outside [0, 1]");
    return tau * q_j * (1.0 - g_j);
}

DebtReport total_debt(const Scenario& s, const Profile& p) {
    p.validate();
    if (p.size() != s.n_domains())
        throw std::invalid_argument("profile size does not match scenario");
    const std::size_t n = s.n_domains();
    DebtReport report;
    report.pairwise.assign(n, std::vector<double>(n, 0.0));
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            report.pairwise[i][j] = pairwise_debt(s.tau(), p.q[j], p.g[j]);
            total.add(report.pairwise[i][j] * s.p(i, j));
        }
    report.total = total.value();
    if (n >= 2 && s.is_symmetric() && uniform_profile(p)) {
        const double unit = pairwise_debt(s.tau(), p.q[0], p.g[0]) * s.p(0, 1);
        report.symmetric_closed_form =
            unit * static_cast<double>(n * (n - 1));
    }
    return report;
}

DebtScalingCurve debt_scaling_curve(const Scenario& symmetric_template,
                                    const std::vector<std::size_t>& n_values,
                                    const SolverOptions& opts) {
    if (!symmetric_template.is_symmetric())
        throw std::invalid_argument("scaling curve requires a symmetric template");
    DebtScalingCurve curve;
    const DomainParams& d = symmetric_template.domain(0);
    const std::size_t n0 = symmetric_template.n_domains();
    const double lambda =
        n0 > 1 ? symmetric_template.lambda(0, 1) : 0.0;
    const double p_bar = n0 > 1 ? symmetric_template.p(0, 1) : 0.0;
    const double omega_bar = symmetric_template.m_consumers() > 0
                                 ? symmetric_template.omega(0, 0)
                                 : 0.0;
    for (std::size_t n : n_values) {
        if (n < 2) throw std::invalid_argument("scaling curve requires N >= 2");
        Scenario at_n = Scenario::symmetric(
            n, symmetric_template.m_consumers(), d, symmetric_template.beta(),
            lambda, omega_bar, symmetric_template.switching_cost(),
            symmetric_template.tau(), p_bar);
        const EquilibriumResult nash = nash_equilibrium(at_n, opts);
        curve.rows.push_back({n, total_debt(at_n, nash.profile).total});
    }

    // OLS slope of log TD on log N.
    const auto m = static_cast<double>(curve.rows.size());
    double x_mean = 0.0, y_mean = 0.0;
    bool fittable = m >= 2.0;
    for (const auto& row : curve.rows) {
        if (row.td_total <= 0.0) fittable = false;
    }
    if (!fittable) {
        curve.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
        return curve;
    }
    for (const auto& row : curve.rows) {
        x_mean += std::log(static_cast<double>(row.n_domains));
        y_mean += std::log(row.td_total);
    }
    x_mean /= m;
    y_mean /= m;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& row : curve.rows) {
        const double dx = std::log(static_cast<double>(row.n_domains)) - x_mean;
        const double dy = std::log(row.td_total) - y_mean;
        sxy += dx * dy;
        sxx += dx * dx;
    }
    curve.fitted_exponent =
        sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
    return curve;
}

}  // namespace meshecon
