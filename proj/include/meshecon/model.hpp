#pragma once

// Core game primitives: parameters, scenarios, strategy profiles, and the
// per-domain cost/benefit/profit functions plus total welfare. Everything
// here is a pure function over immutable, validated inputs.

#include <cstddef>
#include <string>
#include <vector>

namespace meshecon {

using Matrix = std::vector<std::vector<double>>;

/// Per-domain technology and preference parameters.
struct DomainParams {
    double alpha;    // value of the domain's own analytics, > 0
    double gamma_q;  // marginal quality cost coefficient, > 0
    double gamma_g;  // marginal generalization cost coefficient, > 0
    double kappa;    // fixed generalization cost, >= 0

    /// Throws std::invalid_argument on constraint violations.
    void validate() const;

    bool operator==(const DomainParams&) const = default;
};

/// A full game instance: N producing domains, M cross-domain consumers,
/// cross-domain value and need-probability matrices, and debt parameters.
/// Immutable after construction; construction validates all invariants.
class Scenario {
  public:
    /// lambda(i, j) is the value domain i derives from domain j's generality
    /// (diagonal unused, must be zero). omega is M x N, omega[j][i] = consumer
    /// j's weight on domain i. p(i, j) is the probability domain i needs data
    /// from domain j.
    Scenario(std::vector<DomainParams> domains, double beta, Matrix lambda,
             Matrix omega, double switching_cost, double tau, Matrix p);

    /// Uniform scenario: every domain shares `d`, every ordered pair shares
    /// `lambda` and `p_bar`, every consumer weight equals `omega_bar`.
    static Scenario symmetric(std::size_t n_domains, std::size_t m_consumers,
                              const DomainParams& d, double beta, double lambda,
                              double omega_bar, double switching_cost,
                              double tau, double p_bar);

    std::size_t n_domains() const { return domains_.size(); }
    std::size_t m_consumers() const { return omega_.size(); }
    const DomainParams& domain(std::size_t i) const { return domains_[i]; }
    const std::vector<DomainParams>& domains() const { return domains_; }
    double beta() const { return beta_; }
    double switching_cost() const { return switching_cost_; }
    double tau() const { return tau_; }
    const Matrix& lambda_matrix() const { return lambda_; }
    const Matrix& omega_matrix() const { return omega_; }
    const Matrix& p_matrix() const { return p_; }
    double lambda(std::size_t i, std::size_t j) const { return lambda_[i][j]; }
    double omega(std::size_t j, std::size_t i) const { return omega_[j][i]; }
    double p(std::size_t i, std::size_t j) const { return p_[i][j]; }

    /// Sum over j != i of lambda(j, i): the value all other domains place on
    /// domain i's generality. This is the externality weight in the planner's
    /// first-order condition and the Pigouvian rate.
    double lambda_column_sum(std::size_t i) const;

    /// Sum over consumers j of omega(j, i); equals M * mean weight.
    double omega_column_sum(std::size_t i) const;

    /// True when all domains, all off-diagonal lambda/p entries, and all
    /// consumer weights are identical (the uniform-constructor shape).
    bool is_symmetric() const;

    /// Copy with all consumers removed (M = 0).
    Scenario without_consumers() const;

    bool operator==(const Scenario&) const = default;

  private:
    void validate() const;

    std::vector<DomainParams> domains_;
    double beta_;
    Matrix lambda_;  // N x N
    Matrix omega_;   // M x N
    double switching_cost_;
    double tau_;
    Matrix p_;  // N x N
};

/// One strategy vector: quality and generality per domain, each in [0, 1].
struct Profile {
    std::vector<double> q;
    std::vector<double> g;

    static Profile zeros(std::size_t n);
    static Profile uniform(std::size_t n, double quality, double generality);

    std::size_t size() const { return q.size(); }
    void validate() const;

    bool operator==(const Profile&) const = default;
};

// ---- primitives --------------------------------------------------------

/// (gamma_q/2) q^2 + (gamma_g/2) g^2 q + kappa g.
/// Throws std::domain_error when q or g is outside [0, 1].
double cost(const DomainParams& d, double q, double g);

/// alpha * q * (1 + beta * g).
double own_benefit(const DomainParams& d, double beta, double q, double g);

/// Sum over j != i of lambda(i, j) * q_j * g_j. Independent of domain i's
/// own strategy by construction.
double cross_benefit(const Scenario& s, const Profile& p, std::size_t i);

/// Consumer j's utility: sum_i omega(j, i) q_i g_i - S * sum_i (1 - g_i).
/// May be negative.
double consumer_utility(const Scenario& s, const Profile& p, std::size_t j);

/// own_benefit + cross_benefit - cost for domain i.
double domain_profit(const Scenario& s, const Profile& p, std::size_t i);

/// Sum of all domain profits plus all consumer utilities.
double total_welfare(const Scenario& s, const Profile& p);

}  // namespace meshecon
