#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "folio/pareto.hpp"

namespace folio {

struct Nsga2Params {
    int population = 100;
    int generations = 200;
    double crossover_prob = 0.9;
    double sbx_eta = 15.0;
    double mutation_eta = 20.0;
    double mutation_prob = -1.0;  // < 0 means 1/A
};

using Objective = std::function<std::pair<double, double>(const Diversification&)>;

/// Evolves diversifications against (maximize return, minimize variance) and
/// returns the final first front. Candidates are repaired onto the simplex
/// after every crossover and mutation. Deterministic for a fixed seed.
ParetoSet nsga2_optimize(const Objective& objective, int assets, const Nsga2Params& params,
                         std::uint64_t seed);

} // namespace folio
