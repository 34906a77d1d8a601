#pragma once

#include <cstdint>
#include <vector>

#include "folio/diversification.hpp"
#include "folio/pareto.hpp"
#include "folio/price_table.hpp"

namespace folio {

/// Mean and covariance of horizon-length returns, estimated once from the
/// training history and assumed constant.
struct MarkowitzModel {
    std::vector<double> mu;     // length A
    std::vector<double> sigma;  // A x A row-major, symmetric PSD

    int assets() const { return static_cast<int>(mu.size()); }
};

/// Uniform grid of Z target returns from break-even to 2*r_max - 1.
struct RiskGrid {
    std::vector<double> targets;  // targets[zeta - 1]
    double r_max = 1.0;

    int levels() const { return static_cast<int>(targets.size()); }
    double target(int zeta) const;  // zeta in [1, levels()]
};

/// Estimates mu and sigma from non-overlapping horizon-day return blocks
/// (r = e/s). Needs at least two full blocks.
MarkowitzModel markowitz_estimate(const PriceTable& train, int horizon);

/// Largest horizon return e/s over all assets and blocks; feeds the grid.
double max_horizon_return(const PriceTable& train, int horizon);

RiskGrid risk_grid(double r_max, int levels = 25);

/// min x'Sx  s.t.  sum x = 1, x >= 0, mu.x >= target. Deterministic
/// projected-gradient solve with a fixed budget; targets above max(mu) clamp
/// to the best-return vertex.
Diversification markowitz_min_variance(const MarkowitzModel& model, double target_return);

/// One QP solve per grid level.
std::vector<Diversification> markowitz_frontier(const MarkowitzModel& model,
                                                const RiskGrid& grid);

/// Nearest-target selection from a Pareto front: argmin |target - ret|, ties
/// to the lower variance.
std::vector<ParetoPoint> select_by_risk(const ParetoSet& front, const RiskGrid& grid);

/// Z uniform simplex draws sorted ascending by expected return x.mu; the
/// sorted index plays the role of the risk level.
std::vector<Diversification> default_random(int levels, const MarkowitzModel& model,
                                            std::uint64_t seed);

// Model-implied objectives for a weight vector.
double model_return(const MarkowitzModel& model, const Diversification& x);
double model_variance(const MarkowitzModel& model, const Diversification& x);

} // namespace folio
