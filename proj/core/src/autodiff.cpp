#include "folio/autodiff.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "folio/errors.hpp"

namespace folio {

namespace {

std::atomic<std::uint64_t> g_next_id{1};
thread_local bool g_grad_enabled = true;

Var make_node(Tensor value, std::vector<Var> parents, VjpFn vjp, const char* name) {
    if (!value.all_finite()) {
        throw NumericError(std::string("non-finite result from op '") + name + "'");
    }
    auto node = std::make_shared<Variable>();
    node->value = std::move(value);
    node->id = g_next_id.fetch_add(1, std::memory_order_relaxed);
    node->op_name = name;
    bool needs = false;
    if (g_grad_enabled) {
        for (const auto& p : parents) {
            if (p && p->requires_grad) {
                needs = true;
                break;
            }
        }
    }
    if (needs) {
        node->requires_grad = true;
        node->parents = std::move(parents);
        node->vjp = std::move(vjp);
    }
    return node;
}

void require_same_shape(const Var& a, const Var& b, const char* op) {
    if (!a->value.same_shape(b->value)) {
        throw DimensionError(std::string(op) + ": shape mismatch " + a->value.shape_str() +
                             " vs " + b->value.shape_str());
    }
}

void require_rank(const Var& a, int rank, const char* op) {
    if (a->value.rank() != rank) {
        throw DimensionError(std::string(op) + ": expected rank " + std::to_string(rank) +
                             ", got shape " + a->value.shape_str());
    }
}

Tensor elementwise(const Tensor& a, const Tensor& b, double (*f)(double, double)) {
    Tensor out(a.shape());
    const double* pa = a.data();
    const double* pb = b.data();
    double* po = out.data();
    for (std::size_t i = 0; i < a.size(); ++i) po[i] = f(pa[i], pb[i]);
    return out;
}

} // namespace

Var constant(Tensor value) {
    auto node = std::make_shared<Variable>();
    node->value = std::move(value);
    node->id = g_next_id.fetch_add(1, std::memory_order_relaxed);
    return node;
}

Var leaf(Tensor value) {
    auto node = constant(std::move(value));
    node->requires_grad = true;
    return node;
}

bool grad_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : prev_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = prev_; }

Var add(const Var& a, const Var& b) {
    require_same_shape(a, b, "add");
    Tensor out = elementwise(a->value, b->value, [](double x, double y) { return x + y; });
    return make_node(std::move(out), {a, b},
                     [](const Var& g) { return std::vector<Var>{g, g}; }, "add");
}

Var sub(const Var& a, const Var& b) {
    require_same_shape(a, b, "sub");
    Tensor out = elementwise(a->value, b->value, [](double x, double y) { return x - y; });
    return make_node(std::move(out), {a, b},
                     [](const Var& g) { return std::vector<Var>{g, neg(g)}; }, "sub");
}

Var mul(const Var& a, const Var& b) {
    require_same_shape(a, b, "mul");
    Tensor out = elementwise(a->value, b->value, [](double x, double y) { return x * y; });
    return make_node(std::move(out), {a, b},
                     [a, b](const Var& g) { return std::vector<Var>{mul(g, b), mul(g, a)}; },
                     "mul");
}

Var div(const Var& a, const Var& b) {
    require_same_shape(a, b, "div");
    Tensor out = elementwise(a->value, b->value, [](double x, double y) { return x / y; });
    return make_node(std::move(out), {a, b},
                     [a, b](const Var& g) {
                         Var da = div(g, b);
                         Var db = neg(div(mul(g, a), mul(b, b)));
                         return std::vector<Var>{da, db};
                     },
                     "div");
}

Var scale(const Var& a, double c) {
    Tensor out(a->value.shape());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a->value[i] * c;
    return make_node(std::move(out), {a},
                     [c](const Var& g) { return std::vector<Var>{scale(g, c)}; }, "scale");
}

Var add_scalar(const Var& a, double c) {
    Tensor out(a->value.shape());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a->value[i] + c;
    return make_node(std::move(out), {a},
                     [](const Var& g) { return std::vector<Var>{g}; }, "add_scalar");
}

Var neg(const Var& a) { return scale(a, -1.0); }

Var square(const Var& a) { return mul(a, a); }

Var relu(const Var& a) {
    Tensor out(a->value.shape());
    Tensor mask(a->value.shape());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const bool pos = a->value[i] > 0.0;
        out[i] = pos ? a->value[i] : 0.0;
        mask[i] = pos ? 1.0 : 0.0;
    }
    Var mask_c = constant(std::move(mask));
    return make_node(std::move(out), {a},
                     [mask_c](const Var& g) { return std::vector<Var>{mul(g, mask_c)}; },
                     "relu");
}

Var leaky_relu(const Var& a, double slope) {
    Tensor out(a->value.shape());
    Tensor mask(a->value.shape());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const bool pos = a->value[i] > 0.0;
        out[i] = pos ? a->value[i] : slope * a->value[i];
        mask[i] = pos ? 1.0 : slope;
    }
    Var mask_c = constant(std::move(mask));
    return make_node(std::move(out), {a},
                     [mask_c](const Var& g) { return std::vector<Var>{mul(g, mask_c)}; },
                     "leaky_relu");
}

Var sqrt(const Var& a) {
    Tensor out(a->value.shape());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (a->value[i] < 0.0) throw NumericError("sqrt of negative value");
        out[i] = std::sqrt(a->value[i]);
    }
    return make_node(std::move(out), {a},
                     [a](const Var& g) {
                         // d sqrt(a) = g / (2 sqrt(a)), recomputed so the
                         // backward stays differentiable.
                         return std::vector<Var>{scale(div(g, sqrt(a)), 0.5)};
                     },
                     "sqrt");
}

Var sum(const Var& a) {
    double total = 0.0;
    for (std::size_t i = 0; i < a->value.size(); ++i) total += a->value[i];
    std::vector<int> shape = a->value.shape();
    return make_node(Tensor::scalar(total), {a},
                     [shape](const Var& g) {
                         return std::vector<Var>{broadcast_scalar(g, shape)};
                     },
                     "sum");
}

Var mean(const Var& a) { return scale(sum(a), 1.0 / static_cast<double>(a->value.size())); }

Var sum_batch(const Var& a) {
    require_rank(a, 2, "sum_batch");
    const int batch = a->value.dim(0);
    const int m = a->value.dim(1);
    Tensor out({m});
    for (int b = 0; b < batch; ++b) {
        for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] += a->value.at2(b, j);
    }
    return make_node(std::move(out), {a},
                     [batch](const Var& g) {
                         return std::vector<Var>{broadcast_batch(g, batch)};
                     },
                     "sum_batch");
}

Var sum_per_sample(const Var& a) {
    if (a->value.rank() < 2) {
        throw DimensionError("sum_per_sample: expected rank >= 2, got " + a->value.shape_str());
    }
    const int batch = a->value.dim(0);
    const std::size_t block = a->value.size() / static_cast<std::size_t>(batch);
    Tensor out({batch});
    const double* p = a->value.data();
    for (int b = 0; b < batch; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < block; ++i) acc += p[static_cast<std::size_t>(b) * block + i];
        out[static_cast<std::size_t>(b)] = acc;
    }
    std::vector<int> shape = a->value.shape();
    return make_node(std::move(out), {a},
                     [shape](const Var& g) {
                         return std::vector<Var>{broadcast_per_sample(g, shape)};
                     },
                     "sum_per_sample");
}

Var broadcast_scalar(const Var& a, std::vector<int> shape) {
    if (a->value.size() != 1) {
        throw DimensionError("broadcast_scalar: expected scalar, got " + a->value.shape_str());
    }
    Tensor out(shape, a->value[0]);
    return make_node(std::move(out), {a},
                     [](const Var& g) { return std::vector<Var>{sum(g)}; }, "broadcast_scalar");
}

Var broadcast_batch(const Var& a, int batch) {
    require_rank(a, 1, "broadcast_batch");
    const int m = a->value.dim(0);
    Tensor out({batch, m});
    for (int b = 0; b < batch; ++b) {
        for (int j = 0; j < m; ++j) out.at2(b, j) = a->value[static_cast<std::size_t>(j)];
    }
    return make_node(std::move(out), {a},
                     [](const Var& g) { return std::vector<Var>{sum_batch(g)}; },
                     "broadcast_batch");
}

Var broadcast_per_sample(const Var& a, std::vector<int> shape) {
    require_rank(a, 1, "broadcast_per_sample");
    if (shape.size() < 2 || shape[0] != a->value.dim(0)) {
        throw DimensionError("broadcast_per_sample: shape " + shape_str(shape) +
                             " does not extend " + a->value.shape_str());
    }
    Tensor out(shape);
    const int batch = shape[0];
    const std::size_t block = out.size() / static_cast<std::size_t>(batch);
    double* p = out.data();
    for (int b = 0; b < batch; ++b) {
        const double v = a->value[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < block; ++i) p[static_cast<std::size_t>(b) * block + i] = v;
    }
    return make_node(std::move(out), {a},
                     [](const Var& g) { return std::vector<Var>{sum_per_sample(g)}; },
                     "broadcast_per_sample");
}

Var channel_sum(const Var& a) {
    require_rank(a, 3, "channel_sum");
    const int batch = a->value.dim(0);
    const int channels = a->value.dim(1);
    const int time = a->value.dim(2);
    Tensor out({channels});
    for (int b = 0; b < batch; ++b) {
        for (int c = 0; c < channels; ++c) {
            double acc = 0.0;
            for (int t = 0; t < time; ++t) acc += a->value.at3(b, c, t);
            out[static_cast<std::size_t>(c)] += acc;
        }
    }
    return make_node(std::move(out), {a},
                     [batch, time](const Var& g) {
                         return std::vector<Var>{channel_broadcast(g, batch, time)};
                     },
                     "channel_sum");
}

Var channel_broadcast(const Var& a, int batch, int time) {
    require_rank(a, 1, "channel_broadcast");
    const int channels = a->value.dim(0);
    Tensor out({batch, channels, time});
    for (int b = 0; b < batch; ++b) {
        for (int c = 0; c < channels; ++c) {
            const double v = a->value[static_cast<std::size_t>(c)];
            for (int t = 0; t < time; ++t) out.at3(b, c, t) = v;
        }
    }
    return make_node(std::move(out), {a},
                     [](const Var& g) { return std::vector<Var>{channel_sum(g)}; },
                     "channel_broadcast");
}

Var reshape(const Var& a, std::vector<int> shape) {
    if (numel(shape) != a->value.size()) {
        throw DimensionError("reshape: cannot view " + a->value.shape_str() + " as " +
                             shape_str(shape));
    }
    Tensor out = Tensor::from_vector(shape, a->value.values());
    std::vector<int> original = a->value.shape();
    return make_node(std::move(out), {a},
                     [original](const Var& g) {
                         return std::vector<Var>{reshape(g, original)};
                     },
                     "reshape");
}

Var concat_features(const std::vector<Var>& parts) {
    if (parts.empty()) throw ContractError("concat_features: no parts");
    const int batch = parts[0]->value.dim(0);
    int total = 0;
    std::vector<int> offsets;
    std::vector<int> widths;
    for (const auto& p : parts) {
        require_rank(p, 2, "concat_features");
        if (p->value.dim(0) != batch) {
            throw DimensionError("concat_features: batch mismatch " + p->value.shape_str());
        }
        offsets.push_back(total);
        widths.push_back(p->value.dim(1));
        total += p->value.dim(1);
    }
    Tensor out({batch, total});
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Tensor& t = parts[i]->value;
        for (int b = 0; b < batch; ++b) {
            for (int j = 0; j < widths[i]; ++j) out.at2(b, offsets[i] + j) = t.at2(b, j);
        }
    }
    return make_node(std::move(out), parts,
                     [offsets, widths](const Var& g) {
                         std::vector<Var> grads;
                         grads.reserve(offsets.size());
                         for (std::size_t i = 0; i < offsets.size(); ++i) {
                             grads.push_back(slice_features(g, offsets[i], widths[i]));
                         }
                         return grads;
                     },
                     "concat_features");
}

Var slice_features(const Var& a, int start, int len) {
    require_rank(a, 2, "slice_features");
    const int batch = a->value.dim(0);
    const int n = a->value.dim(1);
    if (start < 0 || len <= 0 || start + len > n) {
        throw DimensionError("slice_features: [" + std::to_string(start) + ", " +
                             std::to_string(start + len) + ") out of " + std::to_string(n));
    }
    Tensor out({batch, len});
    for (int b = 0; b < batch; ++b) {
        for (int j = 0; j < len; ++j) out.at2(b, j) = a->value.at2(b, start + j);
    }
    return make_node(std::move(out), {a},
                     [batch, n, start, len](const Var& g) {
                         std::vector<Var> parts;
                         if (start > 0) parts.push_back(constant(Tensor({batch, start})));
                         parts.push_back(g);
                         if (start + len < n) parts.push_back(constant(Tensor({batch, n - start - len})));
                         return std::vector<Var>{concat_features(parts)};
                     },
                     "slice_features");
}

Var matmul_nt(const Var& a, const Var& w) {
    require_rank(a, 2, "matmul_nt");
    require_rank(w, 2, "matmul_nt");
    const int batch = a->value.dim(0);
    const int n = a->value.dim(1);
    const int m = w->value.dim(0);
    if (w->value.dim(1) != n) {
        throw DimensionError("matmul_nt: " + a->value.shape_str() + " x " + w->value.shape_str());
    }
    Tensor out({batch, m});
    for (int b = 0; b < batch; ++b) {
        const double* arow = a->value.data() + static_cast<std::size_t>(b) * n;
        for (int i = 0; i < m; ++i) {
            const double* wrow = w->value.data() + static_cast<std::size_t>(i) * n;
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += arow[j] * wrow[j];
            out.at2(b, i) = acc;
        }
    }
    return make_node(std::move(out), {a, w},
                     [a, w](const Var& g) {
                         return std::vector<Var>{matmul_nn(g, w), matmul_tn(g, a)};
                     },
                     "matmul_nt");
}

Var matmul_nn(const Var& a, const Var& w) {
    require_rank(a, 2, "matmul_nn");
    require_rank(w, 2, "matmul_nn");
    const int batch = a->value.dim(0);
    const int m = a->value.dim(1);
    const int n = w->value.dim(1);
    if (w->value.dim(0) != m) {
        throw DimensionError("matmul_nn: " + a->value.shape_str() + " x " + w->value.shape_str());
    }
    Tensor out({batch, n});
    for (int b = 0; b < batch; ++b) {
        double* orow = out.data() + static_cast<std::size_t>(b) * n;
        for (int i = 0; i < m; ++i) {
            const double av = a->value.at2(b, i);
            const double* wrow = w->value.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) orow[j] += av * wrow[j];
        }
    }
    return make_node(std::move(out), {a, w},
                     [a, w](const Var& g) {
                         return std::vector<Var>{matmul_nt(g, w), matmul_tn(a, g)};
                     },
                     "matmul_nn");
}

Var matmul_tn(const Var& a, const Var& b) {
    require_rank(a, 2, "matmul_tn");
    require_rank(b, 2, "matmul_tn");
    const int batch = a->value.dim(0);
    const int m = a->value.dim(1);
    const int n = b->value.dim(1);
    if (b->value.dim(0) != batch) {
        throw DimensionError("matmul_tn: " + a->value.shape_str() + " x " + b->value.shape_str());
    }
    Tensor out({m, n});
    for (int k = 0; k < batch; ++k) {
        const double* brow = b->value.data() + static_cast<std::size_t>(k) * n;
        for (int i = 0; i < m; ++i) {
            const double av = a->value.at2(k, i);
            double* orow = out.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
        }
    }
    return make_node(std::move(out), {a, b},
                     [a, b](const Var& g) {
                         return std::vector<Var>{matmul_nt(b, g), matmul_nn(a, g)};
                     },
                     "matmul_tn");
}

Var dense(const Var& x, const Var& w, const Var& b) {
    Var y = matmul_nt(x, w);
    if (!b) return y;
    return add(y, broadcast_batch(b, x->value.dim(0)));
}

ConvPad conv_pad(int time, int kernel, int stride) {
    if (time <= 0 || kernel <= 0 || stride <= 0) {
        throw DimensionError("conv_pad: time, kernel and stride must be positive");
    }
    ConvPad cp;
    cp.t_out = (time + stride - 1) / stride;
    const int pad = (cp.t_out - 1) * stride + kernel - time;
    cp.pad_left = std::max(pad, 0) / 2;
    return cp;
}

namespace {

void check_conv_args(const Var& x, const Var& w, const char* op) {
    require_rank(x, 3, op);
    require_rank(w, 3, op);
    if (x->value.dim(1) != w->value.dim(1)) {
        throw DimensionError(std::string(op) + ": channel mismatch " + x->value.shape_str() +
                             " vs kernel " + w->value.shape_str());
    }
}

} // namespace

Var conv1d(const Var& x, const Var& w, int stride) {
    check_conv_args(x, w, "conv1d");
    const int batch = x->value.dim(0);
    const int c_in = x->value.dim(1);
    const int time = x->value.dim(2);
    const int c_out = w->value.dim(0);
    const int kernel = w->value.dim(2);
    const ConvPad cp = conv_pad(time, kernel, stride);
    Tensor out({batch, c_out, cp.t_out});
    for (int b = 0; b < batch; ++b) {
        for (int co = 0; co < c_out; ++co) {
            for (int to = 0; to < cp.t_out; ++to) {
                const int base = to * stride - cp.pad_left;
                const int k_lo = std::max(0, -base);
                const int k_hi = std::min(kernel, time - base);
                double acc = 0.0;
                for (int ci = 0; ci < c_in; ++ci) {
                    const double* xrow =
                        x->value.data() + (static_cast<std::size_t>(b) * c_in + ci) * time;
                    const double* wrow =
                        w->value.data() + (static_cast<std::size_t>(co) * c_in + ci) * kernel;
                    for (int k = k_lo; k < k_hi; ++k) acc += xrow[base + k] * wrow[k];
                }
                out.at3(b, co, to) = acc;
            }
        }
    }
    return make_node(std::move(out), {x, w},
                     [x, w, stride, time, kernel](const Var& g) {
                         Var dx = tconv1d(g, w, stride, time);
                         Var dw = conv1d_kernel_grad(x, g, stride, kernel);
                         return std::vector<Var>{dx, dw};
                     },
                     "conv1d");
}

Var tconv1d(const Var& y, const Var& w, int stride, int out_time) {
    require_rank(y, 3, "tconv1d");
    require_rank(w, 3, "tconv1d");
    const int batch = y->value.dim(0);
    const int c_out = w->value.dim(0);
    const int c_in = w->value.dim(1);
    const int kernel = w->value.dim(2);
    if (y->value.dim(1) != c_out) {
        throw DimensionError("tconv1d: channel mismatch " + y->value.shape_str() +
                             " vs kernel " + w->value.shape_str());
    }
    const ConvPad cp = conv_pad(out_time, kernel, stride);
    if (cp.t_out != y->value.dim(2)) {
        throw DimensionError("tconv1d: out_time " + std::to_string(out_time) +
                             " is inconsistent with input length " +
                             std::to_string(y->value.dim(2)));
    }
    Tensor out({batch, c_in, out_time});
    for (int b = 0; b < batch; ++b) {
        for (int co = 0; co < c_out; ++co) {
            for (int to = 0; to < cp.t_out; ++to) {
                const double yv = y->value.at3(b, co, to);
                if (yv == 0.0) continue;
                const int base = to * stride - cp.pad_left;
                const int k_lo = std::max(0, -base);
                const int k_hi = std::min(kernel, out_time - base);
                for (int ci = 0; ci < c_in; ++ci) {
                    double* zrow =
                        out.data() + (static_cast<std::size_t>(b) * c_in + ci) * out_time;
                    const double* wrow =
                        w->value.data() + (static_cast<std::size_t>(co) * c_in + ci) * kernel;
                    for (int k = k_lo; k < k_hi; ++k) zrow[base + k] += yv * wrow[k];
                }
            }
        }
    }
    return make_node(std::move(out), {y, w},
                     [y, w, stride, kernel](const Var& g) {
                         Var dy = conv1d(g, w, stride);
                         Var dw = conv1d_kernel_grad(g, y, stride, kernel);
                         return std::vector<Var>{dy, dw};
                     },
                     "tconv1d");
}

Var conv1d_kernel_grad(const Var& x, const Var& g, int stride, int kernel) {
    require_rank(x, 3, "conv1d_kernel_grad");
    require_rank(g, 3, "conv1d_kernel_grad");
    const int batch = x->value.dim(0);
    const int c_in = x->value.dim(1);
    const int time = x->value.dim(2);
    const int c_out = g->value.dim(1);
    const ConvPad cp = conv_pad(time, kernel, stride);
    if (g->value.dim(0) != batch || g->value.dim(2) != cp.t_out) {
        throw DimensionError("conv1d_kernel_grad: grad shape " + g->value.shape_str() +
                             " does not match input " + x->value.shape_str());
    }
    Tensor out({c_out, c_in, kernel});
    for (int b = 0; b < batch; ++b) {
        for (int co = 0; co < c_out; ++co) {
            for (int to = 0; to < cp.t_out; ++to) {
                const double gv = g->value.at3(b, co, to);
                if (gv == 0.0) continue;
                const int base = to * stride - cp.pad_left;
                const int k_lo = std::max(0, -base);
                const int k_hi = std::min(kernel, time - base);
                for (int ci = 0; ci < c_in; ++ci) {
                    const double* xrow =
                        x->value.data() + (static_cast<std::size_t>(b) * c_in + ci) * time;
                    double* orow =
                        out.data() + (static_cast<std::size_t>(co) * c_in + ci) * kernel;
                    for (int k = k_lo; k < k_hi; ++k) orow[k] += gv * xrow[base + k];
                }
            }
        }
    }
    const int out_time = time;
    return make_node(std::move(out), {x, g},
                     [x, g, stride, out_time](const Var& grad) {
                         Var dx = tconv1d(g, grad, stride, out_time);
                         Var dg = conv1d(x, grad, stride);
                         return std::vector<Var>{dx, dg};
                     },
                     "conv1d_kernel_grad");
}

Var add_channel_bias(const Var& x, const Var& bias) {
    require_rank(x, 3, "add_channel_bias");
    return add(x, channel_broadcast(bias, x->value.dim(0), x->value.dim(2)));
}

std::vector<Var> gradients(const Var& root, const std::vector<Var>& wrt, bool create_graph) {
    if (!root) throw ContractError("gradients: null root");
    if (root->value.size() != 1) {
        throw ContractError("gradients: root must be scalar, got " + root->value.shape_str());
    }

    // Postorder over the subgraph that requires grad.
    std::vector<const Variable*> order;
    std::unordered_set<const Variable*> seen;
    std::unordered_map<const Variable*, Var> grads;
    std::vector<std::pair<const Variable*, std::size_t>> stack;

    if (root->requires_grad) {
        stack.emplace_back(root.get(), 0);
        seen.insert(root.get());
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < node->parents.size()) {
                const Variable* p = node->parents[next].get();
                ++next;
                if (p->requires_grad && !seen.count(p)) {
                    seen.insert(p);
                    stack.emplace_back(p, 0);
                }
            } else {
                order.push_back(node);
                stack.pop_back();
            }
        }
    }

    grads[root.get()] = constant(Tensor::scalar(1.0));

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Variable* node = *it;
        auto g_it = grads.find(node);
        if (g_it == grads.end() || !node->vjp) continue;
        std::vector<Var> parent_grads;
        if (create_graph) {
            parent_grads = node->vjp(g_it->second);
        } else {
            NoGradGuard guard;
            parent_grads = node->vjp(g_it->second);
        }
        if (parent_grads.size() != node->parents.size()) {
            throw ContractError(std::string("vjp arity mismatch in op '") + node->op_name + "'");
        }
        for (std::size_t i = 0; i < node->parents.size(); ++i) {
            const Var& parent = node->parents[i];
            if (!parent->requires_grad || !parent_grads[i]) continue;
            auto acc = grads.find(parent.get());
            if (acc == grads.end()) {
                grads[parent.get()] = parent_grads[i];
            } else if (create_graph) {
                acc->second = add(acc->second, parent_grads[i]);
            } else {
                NoGradGuard guard;
                acc->second = add(acc->second, parent_grads[i]);
            }
        }
    }

    std::vector<Var> out;
    out.reserve(wrt.size());
    for (const auto& w : wrt) {
        auto it2 = grads.find(w.get());
        if (it2 != grads.end()) {
            out.push_back(it2->second);
        } else {
            out.push_back(constant(Tensor(w->value.shape())));
        }
    }
    return out;
}

} // namespace folio
