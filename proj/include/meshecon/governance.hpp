#pragma once

// The four governance regimes and their welfare comparison: decentralized
// play, a central platform choosing one generality standard, federated
// governance via a per-unit generality subsidy, and a hybrid that meets the
// planner part-way.

#include <optional>
#include <string>
#include <vector>

#include "meshecon/equilibrium.hpp"
#include "meshecon/model.hpp"

namespace meshecon {

enum class Regime { pure_mesh, centralized, federated, hybrid };

std::string regime_name(Regime r);

struct RegimeReport {
    Regime regime = Regime::pure_mesh;
    Profile profile;
    double welfare = 0.0;  // total_welfare at the regime's profile
    std::optional<std::vector<double>> subsidy_schedule;
    std::optional<double> g_standard;   // centralized only
    std::optional<double> central_cost; // big_gamma * G^2 * q_bar, not folded
                                        // into welfare (reported separately)
    int rank = 0;                       // 1..4 within a comparison
    bool welfare_tied = false;          // within 1e-9 of another regime
    std::string coordination_cost;
    std::string friction;
    EquilibriumResult solve;            // underlying solver diagnostics
};

/// Decentralized play: the Nash profile, no correction.
RegimeReport pure_mesh_regime(const Scenario& s, const SolverOptions& opts = {});

/// A central platform picks one generality standard G for every domain,
/// trading the organization-wide value of generality against its own convex
/// provision cost big_gamma * G^2 * q_bar. Domain qualities stay at their
/// Nash values. G* solves the linear first-order condition, clamped to
/// [0, 1], and is cross-checked against a grid search.
RegimeReport centralized_hydration(const Scenario& s, double big_gamma,
                                   const SolverOptions& opts = {});

/// The platform's objective as a function of G, exposed for grid checks.
double centralized_objective(const Scenario& s, double big_gamma,
                             const std::vector<double>& quality, double G);

/// Per-domain subsidy rate sum_{j != i} lambda(j, i) * q_i for the given
/// quality vector: the marginal value of domain i's generality to others.
std::vector<double> pigouvian_subsidy(const Scenario& s,
                                      const std::vector<double>& quality);

/// Convenience overload evaluated at the subsidized-equilibrium qualities.
std::vector<double> pigouvian_subsidy(const Scenario& s,
                                      const SolverOptions& opts = {});

/// Nash play where each domain's payoff is augmented by the subsidy
/// sum_{j != i} lambda(j, i) * q_i * g_i. Internalizing the rate's
/// dependence on own quality makes both first-order conditions match the
/// consumer-free planner's, so the resulting profile restores the social
/// optimum. Solved by its own damped best-response iteration, not by
/// delegating to the planner.
RegimeReport subsidized_equilibrium(const Scenario& s,
                                    const SolverOptions& opts = {});

/// Partial correction: g_i = correction * g_i^SO (first-order planner on the
/// consumer-free scenario), with qualities re-best-responded against that g.
/// correction must lie in [0, 1].
RegimeReport hybrid_regime(const Scenario& s, double correction = 0.7,
                           const SolverOptions& opts = {});

/// All four regimes ranked by welfare (rank 1 = highest). Ties within 1e-9
/// are flagged on every report involved.
std::vector<RegimeReport> regime_comparison(const Scenario& s,
                                            double big_gamma = 10.0,
                                            double correction = 0.7,
                                            const SolverOptions& opts = {});

}  // namespace meshecon
