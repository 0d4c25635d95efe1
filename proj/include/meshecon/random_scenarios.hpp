#pragma once

// Seeded scenario generators for randomized checks. All draws come from a
// single mt19937_64 stream per call; identical seeds give identical
// scenarios. No hidden entropy anywhere.

#include <cstdint>

#include "meshecon/model.hpp"

namespace meshecon {

/// General-purpose random instance: 2..max_domains domains, parameters in
/// the documented plausible ranges, symmetric or heterogeneous (per-domain
/// alpha, per-pair lambda) with equal probability, occasionally a few
/// consumers. Suitable for oracle-equivalence and restoration sweeps.
Scenario random_scenario(std::uint64_t seed, std::size_t max_domains = 6);

/// Random instance guaranteed (by construction plus closed-form screening)
/// to have interior Nash and planner solutions in every coordinate. Fixed
/// generalization cost is zero, which keeps the private and planner
/// generality conditions quality-independent, and consumers are absent.
Scenario random_interior_scenario(std::uint64_t seed,
                                  std::size_t max_domains = 8);

}  // namespace meshecon
