#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "folio/tensor.hpp"

namespace folio {

class Variable;
using Var = std::shared_ptr<Variable>;

/// Maps the gradient w.r.t. a node's output to gradients w.r.t. its parents
/// (same order as `parents`). Implemented in terms of the public ops below so
/// that backward passes are themselves differentiable.
using VjpFn = std::function<std::vector<Var>(const Var&)>;

/// A node in the reverse-mode autodiff graph.
///
/// Nodes are immutable once created; parameters are leaves whose `value` is
/// updated in place between steps (graphs never outlive a step). Vjp closures
/// capture parents but never the node itself, so graphs are cycle-free and
/// reference counting reclaims them.
class Variable {
public:
    Tensor value;
    bool requires_grad = false;
    std::uint64_t id = 0;
    const char* op_name = "leaf";
    std::vector<Var> parents;
    VjpFn vjp;
};

/// Node without history; gradients do not flow into it.
Var constant(Tensor value);
/// Trainable leaf (parameter or differentiated input).
Var leaf(Tensor value);

bool grad_enabled();

/// Disables graph recording in the current scope. Ops still compute values
/// but return constants.
class NoGradGuard {
public:
    NoGradGuard();
    ~NoGradGuard();
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;

private:
    bool prev_;
};

// Elementwise ops (same shape unless noted).
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var div(const Var& a, const Var& b);
Var scale(const Var& a, double c);
Var add_scalar(const Var& a, double c);
Var neg(const Var& a);
Var square(const Var& a);
Var relu(const Var& a);
Var leaky_relu(const Var& a, double slope);
Var sqrt(const Var& a);

// Reductions and broadcasts.
Var sum(const Var& a);                                     // any shape -> [1]
Var mean(const Var& a);                                    // any shape -> [1]
Var sum_batch(const Var& a);                               // [B, M] -> [M]
Var sum_per_sample(const Var& a);                          // [B, ...] -> [B]
Var broadcast_scalar(const Var& a, std::vector<int> shape);        // [1] -> shape
Var broadcast_batch(const Var& a, int batch);                      // [M] -> [B, M]
Var broadcast_per_sample(const Var& a, std::vector<int> shape);    // [B] -> [B, ...]
Var channel_sum(const Var& a);                             // [B, C, T] -> [C]
Var channel_broadcast(const Var& a, int batch, int time);  // [C] -> [B, C, T]

// Shape ops.
Var reshape(const Var& a, std::vector<int> shape);
Var concat_features(const std::vector<Var>& parts);        // [B, Ni] -> [B, sum Ni]
Var slice_features(const Var& a, int start, int len);      // [B, N] -> [B, len]

// Matrix products.
Var matmul_nt(const Var& a, const Var& w);  // [B, N] x [M, N] -> [B, M]
Var matmul_nn(const Var& a, const Var& w);  // [B, M] x [M, N] -> [B, N]
Var matmul_tn(const Var& a, const Var& b);  // [B, M] x [B, N] -> [M, N]

/// Fully connected layer y = x Wt + b. Pass a null bias to skip it.
Var dense(const Var& x, const Var& w, const Var& b);

/// Padding geometry for stride-s convolution with ceil-mode output length.
struct ConvPad {
    int t_out;
    int pad_left;
};
ConvPad conv_pad(int time, int kernel, int stride);

// 1D convolution family. The three ops are mutually closed under
// differentiation: each vjp is expressed via the other two.
Var conv1d(const Var& x, const Var& w, int stride);                      // [B,Ci,T] x [Co,Ci,K] -> [B,Co,To]
Var tconv1d(const Var& y, const Var& w, int stride, int out_time);      // adjoint of conv1d, [B,Co,To] -> [B,Ci,out_time]
Var conv1d_kernel_grad(const Var& x, const Var& g, int stride, int kernel);  // [B,Ci,T] x [B,Co,To] -> [Co,Ci,K]

/// Per-channel bias for conv activations: x[b,c,t] + bias[c].
Var add_channel_bias(const Var& x, const Var& bias);

/// Reverse-mode gradients of a scalar `root` w.r.t. each entry of `wrt`.
/// Unreached entries get zero gradients. With `create_graph` the returned
/// gradients carry history, so they can be differentiated again.
std::vector<Var> gradients(const Var& root, const std::vector<Var>& wrt, bool create_graph = false);

} // namespace folio
