#include "folio/adam.hpp"

#include <cmath>
#include <utility>

#include "folio/errors.hpp"

namespace folio {

Adam::Adam(std::vector<Var> params, AdamConfig cfg) : cfg_(cfg), params_(std::move(params)) {
    if (cfg_.lr <= 0.0) throw ConfigError("adam: lr must be positive");
    if (cfg_.beta1 < 0.0 || cfg_.beta1 >= 1.0) throw ConfigError("adam: beta1 must be in [0, 1)");
    if (cfg_.beta2 < 0.0 || cfg_.beta2 >= 1.0) throw ConfigError("adam: beta2 must be in [0, 1)");
    if (cfg_.eps <= 0.0) throw ConfigError("adam: eps must be positive");
    m_.reserve(params_.size());
    v_.reserve(params_.size());
    for (const auto& p : params_) {
        m_.emplace_back(p->value.shape());
        v_.emplace_back(p->value.shape());
    }
}

void Adam::step(const std::vector<Var>& grads) {
    if (grads.size() != params_.size()) {
        throw ContractError("adam: got " + std::to_string(grads.size()) + " grads for " +
                            std::to_string(params_.size()) + " params");
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params_.size(); ++i) {
        Tensor& p = params_[i]->value;
        const Tensor& g = grads[i]->value;
        if (!p.same_shape(g)) {
            throw DimensionError("adam: grad shape " + g.shape_str() + " vs param " +
                                 p.shape_str());
        }
        Tensor& m = m_[i];
        Tensor& v = v_[i];
        for (std::size_t j = 0; j < p.size(); ++j) {
            m[j] = cfg_.beta1 * m[j] + (1.0 - cfg_.beta1) * g[j];
            v[j] = cfg_.beta2 * v[j] + (1.0 - cfg_.beta2) * g[j] * g[j];
            const double m_hat = m[j] / bc1;
            const double v_hat = v[j] / bc2;
            p[j] -= cfg_.lr * m_hat / (std::sqrt(v_hat) + cfg_.eps);
        }
        if (!p.all_finite()) throw NumericError("adam: parameter became non-finite");
    }
}

} // namespace folio
