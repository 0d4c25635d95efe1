#include "meshecon/random_scenarios.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace meshecon {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Scenario random_scenario(std::uint64_t seed, std::size_t max_domains) {
    if (max_domains < 2) throw std::invalid_argument("max_domains must be >= 2");
    std::mt19937_64 rng(seed);
    const std::size_t n = uniform_size(rng, 2, max_domains);
    const bool heterogeneous = uniform(rng, 0.0, 1.0) < 0.5;
    const double beta = uniform(rng, 0.05, 0.45);

    std::vector<DomainParams> domains;
    domains.reserve(n);
    const DomainParams shared{uniform(rng, 0.3, 0.8), uniform(rng, 0.6, 1.4),
                              uniform(rng, 0.25, 0.8), uniform(rng, 0.0, 0.4)};
    for (std::size_t i = 0; i < n; ++i) {
        DomainParams d = shared;
        if (heterogeneous) {
            d.alpha = uniform(rng, 0.3, 0.8);
            d.kappa = uniform(rng, 0.0, 0.4);
        }
        domains.push_back(d);
    }

    Matrix lambda(n, std::vector<double>(n, 0.0));
    const double lam_shared = uniform(rng, 0.05, 0.6);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                lambda[i][j] =
                    heterogeneous ? uniform(rng, 0.05, 0.6) : lam_shared;

    Matrix p(n, std::vector<double>(n, 0.0));
    const double p_shared = uniform(rng, 0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) p[i][j] = heterogeneous ? uniform(rng, 0.0, 1.0) : p_shared;

    // Mostly producer-only instances; one in four carries a couple of
    // consumers so consumer-stripping paths stay exercised.
    std::size_t m = 0;
    double s_cost = 0.0;
    if (uniform(rng, 0.0, 1.0) < 0.25) {
        m = uniform_size(rng, 1, 3);
        s_cost = uniform(rng, 0.0, 0.1);
    }
    Matrix omega(m, std::vector<double>(n, 0.0));
    for (auto& row : omega)
        for (double& w : row) w = uniform(rng, 0.0, 0.3);

    return Scenario(std::move(domains), beta, std::move(lambda),
                    std::move(omega), s_cost, uniform(rng, 0.5, 2.0),
                    std::move(p));
}

Scenario random_interior_scenario(std::uint64_t seed,
                                  std::size_t max_domains) {
    if (max_domains < 2) throw std::invalid_argument("max_domains must be >= 2");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const std::size_t n = uniform_size(rng, 2, max_domains);
        const bool heterogeneous = uniform(rng, 0.0, 1.0) < 0.5;
        const double beta = uniform(rng, 0.2, 0.6);
        const double gamma_g = uniform(rng, 0.6, 1.6);

        std::vector<DomainParams> domains;
        const double alpha_shared = uniform(rng, 0.3, 0.8);
        for (std::size_t i = 0; i < n; ++i) {
            const double alpha =
                heterogeneous ? uniform(rng, 0.3, 0.8) : alpha_shared;
            // gamma_q set below once lambda columns are known
            domains.push_back({alpha, 1.0, gamma_g, 0.0});
        }

        Matrix lambda(n, std::vector<double>(n, 0.0));
        const double cap = 0.85 * gamma_g - 0.8 * beta;  // max alpha * beta
        if (cap <= 0.02) continue;
        const double pair_hi = cap / static_cast<double>(n - 1);
        const double lam_shared = uniform(rng, 0.1 * pair_hi, pair_hi);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    lambda[i][j] = heterogeneous
                                       ? uniform(rng, 0.1 * pair_hi, pair_hi)
                                       : lam_shared;

        // Screen for interior generalities via the closed forms (kappa = 0
        // makes both quality-independent), then size gamma_q so both quality
        // responses stay interior as well.
        bool interior = true;
        std::vector<double> colsum(n, 0.0);
        for (std::size_t i = 0; i < n && interior; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) colsum[i] += lambda[j][i];
            const double g_ne = domains[i].alpha * beta / gamma_g;
            const double g_so = (domains[i].alpha * beta + colsum[i]) / gamma_g;
            if (!(g_ne > 0.02 && g_so < 0.98)) interior = false;
        }
        if (!interior) continue;
        for (std::size_t i = 0; i < n && interior; ++i) {
            const double top =
                domains[i].alpha * (1.0 + beta) + colsum[i];  // q numerator cap
            domains[i].gamma_q = uniform(rng, top / 0.95, top / 0.6);
            const double g_ne = domains[i].alpha * beta / gamma_g;
            const double g_so = (domains[i].alpha * beta + colsum[i]) / gamma_g;
            const double q_ne = (domains[i].alpha * (1.0 + beta * g_ne) -
                                 0.5 * gamma_g * g_ne * g_ne) /
                                domains[i].gamma_q;
            const double q_so = (domains[i].alpha * (1.0 + beta * g_so) +
                                 colsum[i] * g_so - 0.5 * gamma_g * g_so * g_so) /
                                domains[i].gamma_q;
            if (!(q_ne > 0.05 && q_ne < 0.95 && q_so > 0.05 && q_so < 0.95))
                interior = false;
        }
        if (!interior) continue;

        Matrix p(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) p[i][j] = 0.5;

        return Scenario(std::move(domains), beta, std::move(lambda), Matrix{},
                        0.0, 1.0, std::move(p));
    }
    throw std::runtime_error(
        "random_interior_scenario: no interior draw within attempt budget");
}

}  // namespace meshecon
