#pragma once

#include <string>
#include <utility>
#include <vector>

#include "folio/diversification.hpp"
#include "folio/tensor.hpp"

namespace folio {

/// A set of simulated forward price paths sharing one anchor (the last
/// observed real price per asset). `variations` holds the normalized
/// variation matrices the paths came from when the source is the GAN; the
/// diversity diagnostic works on those.
struct ScenarioSet {
    std::vector<double> anchor;       // length A
    Tensor paths;                     // n x A x horizon, prices
    Tensor variations;                // n x A x horizon, may be empty for historical sources
    std::vector<std::string> tickers;
    std::string source = "gan";

    int count() const { return paths.rank() == 3 ? paths.dim(0) : 0; }
    int assets() const { return paths.rank() == 3 ? paths.dim(1) : 0; }
    int horizon() const { return paths.rank() == 3 ? paths.dim(2) : 0; }
};

/// Checks the ScenarioSet invariants (positive prices, anchor length).
void validate_scenario_set(const ScenarioSet& s);

/// Terminal returns r_i = e_i / s_i per scenario and asset; n x A.
Tensor scenario_returns(const ScenarioSet& scenarios);

/// x . r for one scenario's return vector.
double portfolio_return(const Diversification& x, const double* returns, int assets);

/// Sample mean and unbiased sample variance of the portfolio return over all
/// scenarios in the n x A returns matrix.
std::pair<double, double> estimate_objectives(const Diversification& x, const Tensor& returns);

} // namespace folio
