#pragma once

#include <vector>

#include "folio/diversification.hpp"

namespace folio {

/// One point in objective space: maximize `ret`, minimize `var`.
struct ObjectivePoint {
    double ret;
    double var;
};

/// Pareto dominance under (maximize ret, minimize var): at least as good in
/// both, strictly better in one.
bool dominates(const ObjectivePoint& p, const ObjectivePoint& q);

/// NSGA-II fast non-dominated sort; returns fronts of indices, best first.
std::vector<std::vector<int>> fast_non_dominated_sort(const std::vector<ObjectivePoint>& points);

/// Crowding distances aligned with `front`'s order. Boundary points get
/// +infinity; a front whose objective range collapses contributes zero.
std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& points,
                                      const std::vector<int>& front);

/// A solution carried through the optimizer and into reports.
struct ParetoPoint {
    Diversification x;
    double ret;
    double var;
};
using ParetoSet = std::vector<ParetoPoint>;

} // namespace folio
