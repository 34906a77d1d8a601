#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "folio/tensor.hpp"

// Central finite differences, independent of the autodiff engine. `eval` must
// recompute the scalar under test from scratch so it observes the perturbed
// parameter storage.
namespace oracles {

inline folio::Tensor fd_gradient(folio::Tensor& param, const std::function<double()>& eval,
                                 double h = 1e-6) {
    folio::Tensor grad(param.shape());
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double orig = param[i];
        param[i] = orig + h;
        const double fp = eval();
        param[i] = orig - h;
        const double fm = eval();
        param[i] = orig;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

inline double max_rel_err(const folio::Tensor& got, const folio::Tensor& want,
                          double floor_at = 1e-6) {
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double denom = std::max({floor_at, std::abs(got[i]), std::abs(want[i])});
        worst = std::max(worst, std::abs(got[i] - want[i]) / denom);
    }
    return worst;
}

} // namespace oracles
