#include "meshecon/governance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meshecon {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

constexpr double kTieTolerance = 1e-9;

std::set<std::size_t> corner_set(const Profile& p) {
    std::set<std::size_t> corners;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.g[i] == 0.0) corners.insert(i);
    return corners;
}

std::vector<double> lambda_column_sums(const Scenario& s) {
    std::vector<double> cols(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        cols[i] = s.lambda_column_sum(i);
    return cols;
}

}  // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::pure_mesh: return "pure-mesh";
        case Regime::centralized: return "centralized";
        case Regime::federated: return "federated";
        case Regime::hybrid: return "hybrid";
    }
    return "unknown";
}

RegimeReport pure_mesh_regime(const Scenario& s, const SolverOptions& opts) {
    RegimeReport report;
    report.regime = Regime::pure_mesh;
    report.solve = nash_equilibrium(s, opts);
    report.profile = report.solve.profile;
    report.welfare = total_welfare(s, report.profile);
    report.coordination_cost = "minimal";
    report.friction = "minimal";
    return report;
}

double centralized_objective(const Scenario& s, double big_gamma,
                             const std::vector<double>& quality, double G) {
    double cross = 0.0;
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        for (std::size_t j = 0; j < s.n_domains(); ++j)
            if (j != i) cross += s.lambda(i, j) * quality[j] * G;
    double consumers = 0.0;
    for (std::size_t j = 0; j < s.m_consumers(); ++j) {
        for (std::size_t i = 0; i < s.n_domains(); ++i)
            consumers += s.omega(j, i) * quality[i] * G;
        consumers -= s.switching_cost() * static_cast<double>(s.n_domains()) *
                     (1.0 - G);
    }
    double q_bar = 0.0;
    for (double q : quality) q_bar += q;
    q_bar /= static_cast<double>(s.n_domains());
    return cross + consumers - big_gamma * G * G * q_bar;
}

RegimeReport centralized_hydration(const Scenario& s, double big_gamma,
                                   const SolverOptions& opts) {
    if (!(big_gamma > 0.0))
        throw std::invalid_argument("central cost coefficient must be > 0");
    RegimeReport report;
    report.regime = Regime::centralized;
    report.solve = nash_equilibrium(s, opts);
    const std::vector<double>& q = report.solve.profile.q;

    // Linear first-order condition: marginal value of G is constant, the
    // central cost is quadratic.
    double marginal = 0.0;
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        for (std::size_t j = 0; j < s.n_domains(); ++j)
            if (j != i) marginal += s.lambda(i, j) * q[j];
    for (std::size_t j = 0; j < s.m_consumers(); ++j)
        for (std::size_t i = 0; i < s.n_domains(); ++i)
            marginal += s.omega(j, i) * q[i];
    marginal += s.switching_cost() * static_cast<double>(s.m_consumers()) *
                static_cast<double>(s.n_domains());
    double q_bar = 0.0;
    for (double qi : q) q_bar += qi;
    q_bar /= static_cast<double>(s.n_domains());

    double g_standard;
    if (2.0 * big_gamma * q_bar > 0.0)
        g_standard = clamp01(marginal / (2.0 * big_gamma * q_bar));
    else
        g_standard = marginal > 0.0 ? 1.0 : 0.0;

    // Grid cross-check of the closed form.
    constexpr int kGridPoints = 1000;
    double grid_best = 0.0;
    double grid_best_value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kGridPoints; ++k) {
        const double G = static_cast<double>(k) / kGridPoints;
        const double v = centralized_objective(s, big_gamma, q, G);
        if (v > grid_best_value) {
            grid_best_value = v;
            grid_best = G;
        }
    }
    if (std::abs(grid_best - g_standard) > 1.0 / kGridPoints + 1e-12)
        throw std::logic_error(
            "centralized standard: closed form disagrees with grid search");

    report.g_standard = g_standard;
    report.central_cost = big_gamma * g_standard * g_standard * q_bar;
    report.profile = report.solve.profile;
    std::fill(report.profile.g.begin(), report.profile.g.end(), g_standard);
    report.welfare = total_welfare(s, report.profile);
    report.coordination_cost = "moderate-high";
    report.friction = "high (bottleneck risk)";
    return report;
}

std::vector<double> pigouvian_subsidy(const Scenario& s,
                                      const std::vector<double>& quality) {
    if (quality.size() != s.n_domains())
        throw std::invalid_argument("quality vector size mismatch");
    std::vector<double> schedule(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        schedule[i] = s.lambda_column_sum(i) * quality[i];
    return schedule;
}

std::vector<double> pigouvian_subsidy(const Scenario& s,
                                      const SolverOptions& opts) {
    return *subsidized_equilibrium(s, opts).subsidy_schedule;
}

RegimeReport subsidized_equilibrium(const Scenario& s,
                                    const SolverOptions& opts) {
    const std::vector<double> rate_weight = lambda_column_sums(s);
    const std::size_t n = s.n_domains();

    auto respond = [&](const Profile& x) {
        Profile next = x;
        for (std::size_t i = 0; i < n; ++i) {
            const DomainParams& d = s.domain(i);
            const double g = x.g[i], q = x.q[i];
            next.q[i] = clamp01((d.alpha * (1.0 + s.beta() * g) +
                                 rate_weight[i] * g - 0.5 * d.gamma_g * g * g) /
                                d.gamma_q);
            if (q <= 0.0)
                next.g[i] = d.kappa > 0.0
                                ? 0.0
                                : clamp01((d.alpha * s.beta() + rate_weight[i]) /
                                          d.gamma_g);
            else
                next.g[i] = clamp01(
                    (d.alpha * s.beta() + rate_weight[i] - d.kappa / q) /
                    d.gamma_g);
        }
        return next;
    };
    auto deviation = [](const Profile& a, const Profile& b) {
        double dev = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dev = std::max(dev, std::abs(a.q[i] - b.q[i]));
            dev = std::max(dev, std::abs(a.g[i] - b.g[i]));
        }
        return dev;
    };

    Profile x = Profile::zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        x.q[i] = clamp01(s.domain(i).alpha / s.domain(i).gamma_q);

    RegimeReport report;
    report.regime = Regime::federated;
    bool converged = false;
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts.max_iter; ++it) {
        iterations = it;
        Profile bx = respond(x);
        residual = deviation(bx, x);
        if (residual <= opts.tol) {
            Profile pbx = respond(bx);
            const double polished = deviation(pbx, bx);
            x = std::move(bx);
            if (polished <= opts.tol) {
                residual = polished;
                converged = true;
                break;
            }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            x.q[i] = (1.0 - opts.damping) * x.q[i] + opts.damping * bx.q[i];
            x.g[i] = (1.0 - opts.damping) * x.g[i] + opts.damping * bx.g[i];
        }
    }
    if (!converged) residual = deviation(respond(x), x);
    report.solve = {x, iterations, residual, corner_set(x), converged};

    report.profile = report.solve.profile;
    report.welfare = total_welfare(s, report.profile);
    report.subsidy_schedule = pigouvian_subsidy(s, report.profile.q);
    report.coordination_cost = "low (if verifiable)";
    report.friction = "very high (information asymmetry)";
    return report;
}

RegimeReport hybrid_regime(const Scenario& s, double correction,
                           const SolverOptions& opts) {
    if (!(correction >= 0.0 && correction <= 1.0))
        throw std::invalid_argument("correction must lie in [0, 1]");
    RegimeReport report;
    report.regime = Regime::hybrid;
    report.solve = social_optimum(s.without_consumers(),
                                  PlannerMode::first_order, opts);
    report.profile = report.solve.profile;
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        report.profile.g[i] = correction * report.profile.g[i];
        report.profile.q[i] =
            best_response_q(s.domain(i), s.beta(), report.profile.g[i]);
    }
    report.welfare = total_welfare(s, report.profile);
    report.coordination_cost = "moderate";
    report.friction = "moderate";
    return report;
}

std::vector<RegimeReport> regime_comparison(const Scenario& s,
                                            double big_gamma,
                                            double correction,
                                            const SolverOptions& opts) {
    std::vector<RegimeReport> reports;
    reports.push_back(subsidized_equilibrium(s, opts));
    reports.push_back(centralized_hydration(s, big_gamma, opts));
    reports.push_back(hybrid_regime(s, correction, opts));
    reports.push_back(pure_mesh_regime(s, opts));

    // Rank by welfare; equal-welfare regimes keep the listing order above
    // and are flagged as tied.
    std::vector<std::size_t> order(reports.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return reports[a].welfare > reports[b].welfare;
                     });
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        reports[order[pos]].rank = static_cast<int>(pos) + 1;
    for (std::size_t a = 0; a < reports.size(); ++a)
        for (std::size_t b = 0; b < reports.size(); ++b)
            if (a != b &&
                std::abs(reports[a].welfare - reports[b].welfare) <=
                    kTieTolerance)
                reports[a].welfare_tied = true;
    return reports;
}

}  // namespace meshecon
