#include "meshecon/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace meshecon {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

std::set<std::size_t> corner_set(const Profile& p) {
    std::set<std::size_t> corners;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.g[i] == 0.0) corners.insert(i);
    return corners;
}

double max_deviation(const Profile& a, const Profile& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dev = std::max(dev, std::abs(a.q[i] - b.q[i]));
        dev = std::max(dev, std::abs(a.g[i] - b.g[i]));
    }
    return dev;
}

/// Damped synchronous iteration x <- (1-d) x + d R(x). Once the deviation
/// drops below tol, one pure best-response step is applied so coordinates
/// pinned at a bound land exactly on it; the deviation is re-checked at the
/// polished point before reporting convergence.
template <typename ResponseFn>
EquilibriumResult solve_damped(const Scenario& s, Profile start,
                               ResponseFn&& response,
                               const SolverOptions& opts) {
    Profile x = std::move(start);
    for (int it = 1; it <= opts.max_iter; ++it) {
        Profile bx = response(x);
        const double residual = max_deviation(bx, x);
        if (residual <= opts.tol) {
            Profile pbx = response(bx);
            double polished = max_deviation(pbx, bx);
            if (polished <= opts.tol)
                return {bx, it, polished, corner_set(bx), true};
            x = std::move(bx);  // polish moved off the fixed point; keep going
            continue;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            x.q[i] = (1.0 - opts.damping) * x.q[i] + opts.damping * bx.q[i];
            x.g[i] = (1.0 - opts.damping) * x.g[i] + opts.damping * bx.g[i];
        }
    }
    const double final_residual = max_deviation(response(x), x);
    return {x, opts.max_iter, final_residual, corner_set(x), false};
}

Profile nash_start(const Scenario& s) {
    Profile x = Profile::zeros(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        x.q[i] = clamp01(s.domain(i).alpha / s.domain(i).gamma_q);
    return x;
}

/// Planner first-order responses. extra_i = sum_{j != i} lambda(j, i) +
/// sum_j omega(j, i): the marginal value of domain i's generality to the
/// rest of the organization, which the private responses omit.
Profile planner_response(const Scenario& s, const Profile& x,
                         const std::vector<double>& extra) {
    Profile next = x;
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        const DomainParams& d = s.domain(i);
        const double q = x.q[i], g = x.g[i];
        next.q[i] = clamp01((d.alpha * (1.0 + s.beta() * g) + extra[i] * g -
                             0.5 * d.gamma_g * g * g) /
                            d.gamma_q);
        if (q <= 0.0)
            next.g[i] = d.kappa > 0.0
                            ? 0.0
                            : clamp01((d.alpha * s.beta() + extra[i]) / d.gamma_g);
        else
            next.g[i] = clamp01(
                (d.alpha * s.beta() + extra[i] - d.kappa / q) / d.gamma_g);
    }
    return next;
}

std::vector<double> externality_weights(const Scenario& s) {
    std::vector<double> extra(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i)
        extra[i] = s.lambda_column_sum(i) + s.omega_column_sum(i);
    return extra;
}

/// Welfare terms that involve domain i's own strategy only. Differences of
/// this function equal differences of total_welfare under a move by i.
double planner_local_objective(const Scenario& s, std::size_t i, double q,
                               double g, double extra_i) {
    const DomainParams& d = s.domain(i);
    const double own = d.alpha * q * (1.0 + s.beta() * g);
    const double c = 0.5 * d.gamma_q * q * q + 0.5 * d.gamma_g * g * g * q +
                     d.kappa * g;
    const double consumers_switch =
        s.switching_cost() * static_cast<double>(s.m_consumers()) * g;
    return own - c + extra_i * q * g + consumers_switch;
}

/// Coordinate ascent over a refined grid, one domain block at a time.
/// Returns the number of sweeps performed.
int ascend(const Scenario& s, Profile& x, const std::vector<double>& extra) {
    constexpr double kImprove = 1e-13;
    const double levels[] = {1e-2, 1e-3, 1e-4, 1e-5};
    int sweeps = 0;
    double window = 1.0;  // level 0 scans the whole square
    for (double step : levels) {
        for (int pass = 0; pass < 400; ++pass) {
            ++sweeps;
            bool moved = false;
            for (std::size_t i = 0; i < s.n_domains(); ++i) {
                const double qlo = std::max(0.0, x.q[i] - window);
                const double qhi = std::min(1.0, x.q[i] + window);
                const double glo = std::max(0.0, x.g[i] - window);
                const double ghi = std::min(1.0, x.g[i] + window);
                double best_q = x.q[i], best_g = x.g[i];
                double best_v =
                    planner_local_objective(s, i, best_q, best_g, extra[i]);
                for (double q = qlo; q <= qhi + 0.5 * step; q += step) {
                    const double qc = std::min(q, 1.0);
                    for (double g = glo; g <= ghi + 0.5 * step; g += step) {
                        const double gc = std::min(g, 1.0);
                        const double v =
                            planner_local_objective(s, i, qc, gc, extra[i]);
                        if (v > best_v + kImprove) {
                            best_v = v;
                            best_q = qc;
                            best_g = gc;
                        }
                    }
                }
                if (best_q != x.q[i] || best_g != x.g[i]) {
                    x.q[i] = best_q;
                    x.g[i] = best_g;
                    moved = true;
                }
            }
            if (!moved) break;
        }
        window = 2.0 * step;  // next level scans around the current block optimum
    }
    return sweeps;
}

}  // namespace

GeneralityResponse best_response_g(const DomainParams& d, double beta,
                                   double q) {
    if (q < 0.0 || q > 1.0) throw std::domain_error("q outside [0, 1]");
    if (q <= 0.0) {
        if (d.kappa > 0.0) return {0.0, true};
        return {clamp01(d.alpha * beta / d.gamma_g), false};
    }
    return {clamp01((d.alpha * beta - d.kappa / q) / d.gamma_g), false};
}

double best_response_q(const DomainParams& d, double beta, double g) {
    if (g < 0.0 || g > 1.0) throw std::domain_error("g outside [0, 1]");
    return clamp01(
        (d.alpha * (1.0 + beta * g) - 0.5 * d.gamma_g * g * g) / d.gamma_q);
}

EquilibriumResult nash_equilibrium(const Scenario& s,
                                   const SolverOptions& opts) {
    auto response = [&s](const Profile& x) {
        Profile next = x;
        for (std::size_t i = 0; i < s.n_domains(); ++i) {
            next.q[i] = best_response_q(s.domain(i), s.beta(), x.g[i]);
            next.g[i] = best_response_g(s.domain(i), s.beta(), x.q[i]).value;
        }
        return next;
    };
    return solve_damped(s, nash_start(s), response, opts);
}

EquilibriumResult social_optimum(const Scenario& s, PlannerMode mode,
                                 const SolverOptions& opts) {
    const std::vector<double> extra = externality_weights(s);
    if (mode == PlannerMode::first_order) {
        auto response = [&s, &extra](const Profile& x) {
            return planner_response(s, x, extra);
        };
        return solve_damped(s, nash_start(s), response, opts);
    }

    // full_objective: coordinate ascent multistarted from the Nash profile
    // (so the result can never fall below equilibrium welfare), the
    // first-order planner profile, and the all-ones corner.
    EquilibriumResult nash = nash_equilibrium(s, opts);
    EquilibriumResult foc = social_optimum(s, PlannerMode::first_order, opts);
    std::vector<Profile> starts = {nash.profile, foc.profile,
                                   Profile::uniform(s.n_domains(), 1.0, 1.0)};
    Profile best = starts.front();
    double best_w = -std::numeric_limits<double>::infinity();
    int total_sweeps = 0;
    for (Profile start : starts) {
        total_sweeps += ascend(s, start, extra);
        const double w = total_welfare(s, start);
        if (w > best_w) {
            best_w = w;
            best = std::move(start);
        }
    }
    return {best, total_sweeps, 0.0, corner_set(best),
            nash.converged && foc.converged};
}

GapReport generality_gap(const Scenario& s, const SolverOptions& opts) {
    GapReport report;
    report.nash = nash_equilibrium(s, opts);
    report.social = social_optimum(s, PlannerMode::first_order, opts);
    report.closed_form.resize(s.n_domains());
    report.realized.resize(s.n_domains());
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        report.closed_form[i] = s.lambda_column_sum(i) / s.domain(i).gamma_g;
        report.realized[i] = report.social.profile.g[i] - report.nash.profile.g[i];
    }
    return report;
}

TrapDiagnosis trap_check(const Scenario& s, const EquilibriumResult& nash) {
    TrapDiagnosis diag;
    diag.organization_trapped = true;
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        const DomainParams& d = s.domain(i);
        const double q = nash.profile.q[i];
        double effective;
        if (q > 0.0)
            effective = d.kappa / q;
        else
            effective = d.kappa > 0.0 ? std::numeric_limits<double>::infinity()
                                      : 0.0;
        const double synergy = d.alpha * s.beta();
        const bool trapped = synergy < effective;
        diag.per_domain.push_back({synergy, effective, trapped});
        diag.organization_trapped = diag.organization_trapped && trapped;
    }
    return diag;
}

TrapDiagnosis trap_check(const Scenario& s, const SolverOptions& opts) {
    return trap_check(s, nash_equilibrium(s, opts));
}

Profile grid_oracle(const Scenario& s, double resolution) {
    if (!(resolution > 0.0 && resolution <= 0.1))
        throw std::domain_error("resolution must lie in (0, 0.1]");
    const auto K = static_cast<long>(std::llround(1.0 / resolution));
    const double step = 1.0 / static_cast<double>(K);
    constexpr double kImprove = 1e-12;
    constexpr int kMaxSweeps = 1000;

    const std::size_t n = s.n_domains();
    Profile x = Profile::zeros(n);
    std::map<std::vector<long>, int> seen;
    std::vector<long> idx(2 * n, 0);  // (q, g) grid indices per domain

    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            long best_kq = idx[2 * i], best_kg = idx[2 * i + 1];
            double best_v = domain_profit(s, x, i);
            for (long kq = 0; kq <= K; ++kq) {
                x.q[i] = static_cast<double>(kq) * step;
                for (long kg = 0; kg <= K; ++kg) {
                    x.g[i] = static_cast<double>(kg) * step;
                    const double v = domain_profit(s, x, i);
                    if (v > best_v + kImprove) {
                        best_v = v;
                        best_kq = kq;
                        best_kg = kg;
                    }
                }
            }
            if (best_kq != idx[2 * i] || best_kg != idx[2 * i + 1]) moved = true;
            idx[2 * i] = best_kq;
            idx[2 * i + 1] = best_kg;
            x.q[i] = static_cast<double>(best_kq) * step;
            x.g[i] = static_cast<double>(best_kg) * step;
        }
        if (!moved) return x;
        auto [it, inserted] = seen.emplace(idx, sweep);
        if (!inserted)
            throw std::runtime_error(
                "grid_oracle: strategy cycle detected (sweep " +
                std::to_string(sweep) + " revisits the profile of sweep " +
                std::to_string(it->second) + ")");
    }
    throw std::runtime_error("grid_oracle: no fixed point within sweep budget");
}

std::set<std::size_t> hub_domains(const Scenario& s, double factor) {
    if (!(factor > 1.0))
        throw std::invalid_argument("hub factor must be > 1");
    const std::size_t n = s.n_domains();
    std::vector<double> colsum(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        colsum[i] = s.lambda_column_sum(i);
        mean += colsum[i];
    }
    mean /= static_cast<double>(n);
    std::set<std::size_t> hubs;
    for (std::size_t i = 0; i < n; ++i)
        if (colsum[i] > factor * mean) hubs.insert(i);
    return hubs;
}

}  // namespace meshecon
