#include "meshecon/model.hpp"

#include <cmath>
#include <stdexcept>

namespace meshecon {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_unit_range(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(name) + " outside [0, 1]: " +
                                std::to_string(x));
}

bool square_with_dim(const Matrix& m, std::size_t n) {
    if (m.size() != n) return false;
    for (const auto& row : m)
        if (row.size() != n) return false;
    return true;
}

}  // namespace

void DomainParams::validate() const {
    require(alpha > 0.0, "alpha must be > 0");
    require(gamma_q > 0.0, "gamma_q must be > 0");
    require(gamma_g > 0.0, "gamma_g must be > 0");
    require(kappa >= 0.0, "kappa must be >= 0");
    require(std::isfinite(alpha) && std::isfinite(gamma_q) &&
                std::isfinite(gamma_g) && std::isfinite(kappa),
            "domain parameters must be finite");
}

Scenario::Scenario(std::vector<DomainParams> domains, double beta,
                   Matrix lambda, Matrix omega, double switching_cost,
                   double tau, Matrix p)
    : domains_(std::move(domains)),
      beta_(beta),
      lambda_(std::move(lambda)),
      omega_(std::move(omega)),
      switching_cost_(switching_cost),
      tau_(tau),
      p_(std::move(p)) {
    validate();
}

Scenario Scenario::symmetric(std::size_t n_domains, std::size_t m_consumers,
                             const DomainParams& d, double beta, double lambda,
                             double omega_bar, double switching_cost,
                             double tau, double p_bar) {
    std::vector<DomainParams> domains(n_domains, d);
    Matrix lam(n_domains, std::vector<double>(n_domains, lambda));
    Matrix p(n_domains, std::vector<double>(n_domains, p_bar));
    for (std::size_t i = 0; i < n_domains; ++i) {
        lam[i][i] = 0.0;
        p[i][i] = 0.0;
    }
    Matrix omega(m_consumers, std::vector<double>(n_domains, omega_bar));
    return Scenario(std::move(domains), beta, std::move(lam), std::move(omega),
                    switching_cost, tau, std::move(p));
}

void Scenario::validate() const {
    const std::size_t n = domains_.size();
    require(n >= 1, "scenario needs at least one domain");
    for (const auto& d : domains_) d.validate();
    require(beta_ >= 0.0 && std::isfinite(beta_), "beta must be >= 0");
    require(switching_cost_ >= 0.0 && std::isfinite(switching_cost_),
            "switching_cost must be >= 0");
    require(tau_ >= 0.0 && std::isfinite(tau_), "tau must be >= 0");
    require(square_with_dim(lambda_, n), "lambda_matrix must be N x N");
    require(square_with_dim(p_, n), "p_matrix must be N x N");
    for (std::size_t i = 0; i < n; ++i) {
        require(lambda_[i][i] == 0.0, "lambda_matrix diagonal must be zero");
        require(p_[i][i] == 0.0, "p_matrix diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            require(lambda_[i][j] >= 0.0 && std::isfinite(lambda_[i][j]),
                    "lambda entries must be >= 0");
            require(p_[i][j] >= 0.0 && p_[i][j] <= 1.0,
                    "p entries must lie in [0, 1]");
        }
    }
    for (const auto& row : omega_) {
        require(row.size() == n, "omega rows must have N columns");
        for (double w : row)
            require(w >= 0.0 && std::isfinite(w), "omega entries must be >= 0");
    }
}

double Scenario::lambda_column_sum(std::size_t i) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_domains(); ++j)
        if (j != i) sum += lambda_[j][i];
    return sum;
}

double Scenario::omega_column_sum(std::size_t i) const {
    double sum = 0.0;
    for (const auto& row : omega_) sum += row[i];
    return sum;
}

bool Scenario::is_symmetric() const {
    const std::size_t n = n_domains();
    for (std::size_t i = 1; i < n; ++i)
        if (!(domains_[i] == domains_[0])) return false;
    double lam0 = n > 1 ? lambda_[0][1] : 0.0;
    double p0 = n > 1 ? p_[0][1] : 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (lambda_[i][j] != lam0 || p_[i][j] != p0) return false;
        }
    for (const auto& row : omega_)
        for (double w : row)
            if (w != (omega_.empty() ? 0.0 : omega_[0][0])) return false;
    return true;
}

Scenario Scenario::without_consumers() const {
    return Scenario(domains_, beta_, lambda_, Matrix{}, switching_cost_, tau_,
                    p_);
}

Profile Profile::zeros(std::size_t n) {
    return Profile{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

Profile Profile::uniform(std::size_t n, double quality, double generality) {
    Profile p{std::vector<double>(n, quality), std::vector<double>(n, generality)};
    p.validate();
    return p;
}

void Profile::validate() const {
    if (q.size() != g.size())
        throw std::invalid_argument("profile q/g length mismatch");
    for (double v : q) check_unit_range(v, "q");
    for (double v : g) check_unit_range(v, "g");
}

double cost(const DomainParams& d, double q, double g) {
    check_unit_range(q, "q");
    check_unit_range(g, "g");
    return 0.5 * d.gamma_q * q * q + 0.5 * d.gamma_g * g * g * q + d.kappa * g;
}

double own_benefit(const DomainParams& d, double beta, double q, double g) {
    check_unit_range(q, "q");
    check_unit_range(g, "g");
    return d.alpha * q * (1.0 + beta * g);
}

double cross_benefit(const Scenario& s, const Profile& p, std::size_t i) {
    if (i >= s.n_domains()) throw std::out_of_range("domain index out of range");
    double sum = 0.0;
    for (std::size_t j = 0; j < s.n_domains(); ++j)
        if (j != i) sum += s.lambda(i, j) * p.q[j] * p.g[j];
    return sum;
}

double consumer_utility(const Scenario& s, const Profile& p, std::size_t j) {
    if (j >= s.m_consumers())
        throw std::out_of_range("consumer index out of range");
    double value = 0.0;
    double narrowness = 0.0;
    for (std::size_t i = 0; i < s.n_domains(); ++i) {
        value += s.omega(j, i) * p.q[i] * p.g[i];
        narrowness += 1.0 - p.g[i];
    }
    return value - s.switching_cost() * narrowness;
}

double domain_profit(const Scenario& s, const Profile& p, std::size_t i) {
    if (i >= s.n_domains()) throw std::out_of_range("domain index out of range");
    return own_benefit(s.domain(i), s.beta(), p.q[i], p.g[i]) +
           cross_benefit(s, p, i) - cost(s.domain(i), p.q[i], p.g[i]);
}

double total_welfare(const Scenario& s, const Profile& p) {
    double w = 0.0;
    for (std::size_t i = 0; i < s.n_domains(); ++i) w += domain_profit(s, p, i);
    for (std::size_t j = 0; j < s.m_consumers(); ++j)
        w += consumer_utility(s, p, j);
    return w;
}

}  // namespace meshecon
