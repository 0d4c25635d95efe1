#pragma once

// Welfare-loss quantification (closed form vs direct difference) and
// technical-debt accounting with its scaling-in-N curve.

#include <cstddef>
#include <optional>
#include <vector>

#include "meshecon/equilibrium.hpp"
#include "meshecon/model.hpp"

namespace meshecon {

/// Both routes to the welfare shortfall. closed_form evaluates the textbook
/// decomposition sum_i (Lambda_i + Omega_i) q_i* dg_i
/// - (gamma_g_i / 2)(g_i^SO^2 - g_i^NE^2) q_i* at the Nash qualities with the
/// first-order planner generalities; direct is total_welfare at the
/// full-objective planner profile minus total_welfare at Nash. The two need
/// not agree (the decomposition omits fixed-cost and own-synergy terms), so
/// the discrepancy is carried, never suppressed.
struct WelfareLossReport {
    double closed_form = 0.0;
    double direct = 0.0;
    double discrepancy = 0.0;
    std::vector<double> per_domain_terms;
    EquilibriumResult nash;
    EquilibriumResult social_first_order;
    EquilibriumResult social_full;
};

WelfareLossReport welfare_loss(const Scenario& s, const SolverOptions& opts = {});

/// tau * q_j * (1 - g_j): integration cost a consumer of domain j's product
/// bears when the product is narrow.
double pairwise_debt(double tau, double q_j, double g_j);

struct DebtReport {
    Matrix pairwise;     // pairwise[i][j] = tau q_j (1 - g_j), zero diagonal
    double total = 0.0;  // sum_i sum_{j != i} pairwise[i][j] * P_ij
    // tau * q_bar * N(N-1) * P_bar, filled for symmetric scenarios with a
    // uniform profile (and exactly the corner form when g = 0).
    std::optional<double> symmetric_closed_form;
};

DebtReport total_debt(const Scenario& s, const Profile& p);

struct DebtScalingRow {
    std::size_t n_domains = 0;
    double td_total = 0.0;
};

struct DebtScalingCurve {
    std::vector<DebtScalingRow> rows;
    double fitted_exponent = 0.0;  // least-squares slope of log TD vs log N
};

/// Re-instantiates a symmetric template at each N, solves Nash, and totals
/// the debt. The exponent is the ordinary least-squares slope of log TD on
/// log N (NaN if any TD is nonpositive).
DebtScalingCurve debt_scaling_curve(const Scenario& symmetric_template,
                                    const std::vector<std::size_t>& n_values,
                                    const SolverOptions& opts = {});

}  // namespace meshecon
