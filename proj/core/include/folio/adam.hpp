#pragma once

#include <cstdint>
#include <vector>

#include "folio/autodiff.hpp"
#include "folio/tensor.hpp"

namespace folio {

struct AdamConfig {
    double lr = 2e-5;
    double beta1 = 0.5;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction. Parameters are updated in place; the optimizer
/// state (first and second moments, step count) is exposed so checkpoints can
/// capture it exactly.
class Adam {
public:
    Adam(std::vector<Var> params, AdamConfig cfg);

    /// Applies one update. `grads` aligns with the parameter list.
    void step(const std::vector<Var>& grads);

    const AdamConfig& config() const { return cfg_; }
    const std::vector<Var>& params() const { return params_; }

    std::int64_t steps() const { return t_; }
    void set_steps(std::int64_t t) { t_ = t; }
    std::vector<Tensor>& moments1() { return m_; }
    std::vector<Tensor>& moments2() { return v_; }
    const std::vector<Tensor>& moments1() const { return m_; }
    const std::vector<Tensor>& moments2() const { return v_; }

private:
    AdamConfig cfg_;
    std::vector<Var> params_;
    std::vector<Tensor> m_;
    std::vector<Tensor> v_;
    std::int64_t t_ = 0;
};

} // namespace folio
