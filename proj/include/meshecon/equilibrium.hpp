#pragma once

// Nash and planner solvers. Both are damped synchronous best-response
// iterations over per-domain first-order conditions, with a pure
// best-response polish step on convergence so clamped coordinates land
// exactly on the bounds. grid_oracle is the independent brute-force check:
// it never touches the first-order conditions, only domain_profit.

#include <cstddef>
#include <set>
#include <vector>

#include "meshecon/model.hpp"

namespace meshecon {

struct SolverOptions {
    double tol = 1e-10;    // convergence threshold on max best-response deviation
    int max_iter = 10000;
    double damping = 0.5;  // fraction of the step toward the best response
};

struct EquilibriumResult {
    Profile profile;
    int iterations = 0;
    double residual = 0.0;  // max |best_response(x) - x| at the returned profile
    std::set<std::size_t> corner_domains;  // { i : g_i == 0 }
    bool converged = false;
};

/// Generality best response for one domain, holding its quality fixed.
/// degenerate_quality marks the q == 0, kappa > 0 case where the effective
/// fixed cost diverges and generality can never pay.
struct GeneralityResponse {
    double value = 0.0;
    bool degenerate_quality = false;
};
GeneralityResponse best_response_g(const DomainParams& d, double beta, double q);

/// Quality best response for one domain, holding its generality fixed:
/// clamp([alpha (1 + beta g) - (gamma_g / 2) g^2] / gamma_q, 0, 1).
double best_response_q(const DomainParams& d, double beta, double g);

/// Simultaneous fixed point of the private best responses, from the start
/// q_i = alpha_i / gamma_q_i, g_i = 0. Non-convergence is reported through
/// converged = false with the last iterate, never silently.
EquilibriumResult nash_equilibrium(const Scenario& s,
                                   const SolverOptions& opts = {});

enum class PlannerMode {
    first_order,    // joint fixed point of the planner first-order conditions
    full_objective  // direct welfare maximization by coordinate ascent on a
                    // refined grid, multistarted from the Nash profile
};

EquilibriumResult social_optimum(const Scenario& s, PlannerMode mode,
                                 const SolverOptions& opts = {});

/// Per-domain generality shortfall of the equilibrium below the planner.
struct GapReport {
    std::vector<double> closed_form;  // sum_{j != i} lambda(j, i) / gamma_g_i
    std::vector<double> realized;     // g_i^SO - g_i^NE from the solvers
    EquilibriumResult nash;
    EquilibriumResult social;  // first_order mode
};
GapReport generality_gap(const Scenario& s, const SolverOptions& opts = {});

struct DomainTrap {
    double private_synergy;      // alpha_i * beta
    double effective_fixed_cost; // kappa_i / q_i at equilibrium (inf at q = 0)
    bool trapped;                // private_synergy < effective_fixed_cost
};
struct TrapDiagnosis {
    std::vector<DomainTrap> per_domain;
    bool organization_trapped = false;  // every domain trapped
};
TrapDiagnosis trap_check(const Scenario& s, const SolverOptions& opts = {});
TrapDiagnosis trap_check(const Scenario& s, const EquilibriumResult& nash);

/// Brute-force equilibrium: sequential best-response sweeps over the
/// discretized [0,1]^2 strategy grid (step ~ resolution, snapped to 1/K),
/// moving a domain only when it improves its profit by more than 1e-12.
/// Detects and reports strategy cycles instead of looping forever.
/// resolution must lie in (0, 0.1].
Profile grid_oracle(const Scenario& s, double resolution);

/// Indices whose incoming cross-domain value column sum exceeds
/// `factor` times the mean column sum. factor must be > 1.
std::set<std::size_t> hub_domains(const Scenario& s, double factor = 2.0);

}  // namespace meshecon
