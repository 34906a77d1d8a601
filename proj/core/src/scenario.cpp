#include "folio/scenario.hpp"

#include <cmath>

#include "folio/errors.hpp"
#include "folio/io.hpp"

namespace folio {

void validate_scenario_set(const ScenarioSet& s) {
    if (s.paths.rank() != 3) {
        throw DimensionError("scenario paths must be n x A x horizon, got " +
                             s.paths.shape_str());
    }
    if (s.anchor.size() != static_cast<std::size_t>(s.assets())) {
        throw DimensionError("scenario anchor length " + std::to_string(s.anchor.size()) +
                             " vs " + std::to_string(s.assets()) + " assets");
    }
    for (double a : s.anchor) {
        if (!(a > 0.0)) throw DataError("non-positive anchor price " + format_double(a));
    }
    for (std::size_t i = 0; i < s.paths.size(); ++i) {
        if (!(s.paths[i] > 0.0)) {
            throw DataError("non-positive scenario price " + format_double(s.paths[i]));
        }
    }
    if (s.variations.size() > 0 && !s.variations.same_shape(s.paths)) {
        throw DimensionError("scenario variations " + s.variations.shape_str() +
                             " do not match paths " + s.paths.shape_str());
    }
}

Tensor scenario_returns(const ScenarioSet& scenarios) {
    validate_scenario_set(scenarios);
    const int n = scenarios.count();
    const int assets = scenarios.assets();
    const int horizon = scenarios.horizon();
    if (horizon < 1) throw ContractError("scenario_returns: empty horizon");
    Tensor r({n, assets});
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < assets; ++a) {
            r.at2(i, a) = scenarios.paths.at3(i, a, horizon - 1) /
                          scenarios.anchor[static_cast<std::size_t>(a)];
        }
    }
    return r;
}

double portfolio_return(const Diversification& x, const double* returns, int assets) {
    if (static_cast<int>(x.size()) != assets) {
        throw DimensionError("portfolio_return: " + std::to_string(x.size()) + " weights for " +
                             std::to_string(assets) + " assets");
    }
    require_simplex(x);
    double acc = 0.0;
    for (int a = 0; a < assets; ++a) acc += x[static_cast<std::size_t>(a)] * returns[a];
    return acc;
}

std::pair<double, double> estimate_objectives(const Diversification& x, const Tensor& returns) {
    if (returns.rank() != 2) {
        throw DimensionError("estimate_objectives: returns must be n x A, got " +
                             returns.shape_str());
    }
    const int n = returns.dim(0);
    const int assets = returns.dim(1);
    if (n < 2) throw ContractError("estimate_objectives: need at least 2 scenarios");

    double mean = 0.0;
    std::vector<double> rp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rp[static_cast<std::size_t>(i)] =
            portfolio_return(x, returns.data() + static_cast<std::size_t>(i) * assets, assets);
        mean += rp[static_cast<std::size_t>(i)];
    }
    mean /= n;
    double var = 0.0;
    for (double r : rp) var += (r - mean) * (r - mean);
    var /= (n - 1);
    return {mean, var};
}

} // namespace folio
