#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "folio/adam.hpp"
#include "folio/autodiff.hpp"
#include "folio/errors.hpp"
#include "folio/rng.hpp"
#include "folio/spectral.hpp"
#include "folio/tensor.hpp"
#include "oracles/fd.hpp"
#include "oracles/svd.hpp"

using folio::Tensor;
using folio::Var;

namespace {

Tensor rand_tensor(const std::vector<int>& shape, folio::Rng& rng, double lo = -1.0,
                   double hi = 1.0) {
    Tensor t(shape);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
    return t;
}

// Values bounded away from zero so relu/leaky kinks and divisions stay clear
// of the finite-difference step.
Tensor rand_tensor_away_from_zero(const std::vector<int>& shape, folio::Rng& rng) {
    Tensor t(shape);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double mag = rng.uniform(0.2, 1.0);
        t[i] = rng.uniform() < 0.5 ? -mag : mag;
    }
    return t;
}

double eval_value(const std::function<Var()>& build) {
    folio::NoGradGuard guard;
    return build()->value.item();
}

void check_grads_fd(const std::function<Var()>& build, const std::vector<Var>& leaves,
                    double tol = 1e-4) {
    Var loss = build();
    auto grads = folio::gradients(loss, leaves);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        Tensor fd = oracles::fd_gradient(leaves[i]->value, [&] { return eval_value(build); });
        const double err = oracles::max_rel_err(grads[i]->value, fd);
        CAPTURE(i);
        CHECK(err < tol);
    }
}

} // namespace

TEST_CASE("rng determinism and distributions") {
    folio::Rng a(42);
    folio::Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    folio::Rng r(7);
    double lo = 1.0, hi = 0.0, acc = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        acc += u;
    }
    CHECK(acc / 10000.0 == doctest::Approx(0.5).epsilon(0.05));
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);

    double mean = 0.0, var = 0.0;
    std::vector<double> zs(20000);
    for (auto& z : zs) {
        z = r.normal();
        mean += z;
    }
    mean /= static_cast<double>(zs.size());
    for (double z : zs) var += (z - mean) * (z - mean);
    var /= static_cast<double>(zs.size() - 1);
    CHECK(mean == doctest::Approx(0.0).epsilon(0.05));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));

    for (int i = 0; i < 1000; ++i) {
        const int k = r.uniform_int(7);
        CHECK(k >= 0);
        CHECK(k < 7);
    }
    CHECK_THROWS_AS(r.uniform_int(0), folio::ContractError);

    auto w = r.simplex(5);
    double total = 0.0;
    for (double wi : w) {
        CHECK(wi >= 0.0);
        total += wi;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rng derived streams") {
    folio::Rng s1 = folio::derive_rng(9, {1, 5});
    folio::Rng s2 = folio::derive_rng(9, {1, 5});
    folio::Rng s3 = folio::derive_rng(9, {1, 6});
    bool differs = false;
    for (int i = 0; i < 16; ++i) {
        const auto a = s1.next_u64();
        CHECK(a == s2.next_u64());
        if (a != s3.next_u64()) differs = true;
    }
    CHECK(differs);
}

TEST_CASE("tensor basics") {
    Tensor t({2, 3}, 1.5);
    CHECK(t.size() == 6);
    CHECK(t.at2(1, 2) == 1.5);
    CHECK(t.shape_str() == "[2, 3]");
    CHECK_THROWS_AS(Tensor({2, 0}), folio::DimensionError);
    CHECK_THROWS_AS(Tensor::from_vector({2, 2}, {1.0, 2.0, 3.0}), folio::DimensionError);
    CHECK_THROWS_AS(t.item(), folio::DimensionError);
    CHECK(Tensor::scalar(4.0).item() == 4.0);
}

TEST_CASE("dense layer") {
    SUBCASE("identity weight") {
        Var x = folio::constant(Tensor::from_vector({1, 2}, {3.0, 4.0}));
        Var w = folio::constant(Tensor::from_vector({2, 2}, {1.0, 0.0, 0.0, 1.0}));
        Var b = folio::constant(Tensor({2}));
        Var y = folio::dense(x, w, b);
        CHECK(y->value.at2(0, 0) == 3.0);
        CHECK(y->value.at2(0, 1) == 4.0);
    }
    SUBCASE("dot product with bias") {
        Var x = folio::constant(Tensor::from_vector({1, 2}, {3.0, 4.0}));
        Var w = folio::constant(Tensor::from_vector({1, 2}, {1.0, 2.0}));
        Var b = folio::constant(Tensor::from_vector({1}, {0.5}));
        Var y = folio::dense(x, w, b);
        CHECK(y->value.item() == doctest::Approx(11.5));
    }
    SUBCASE("shape mismatch") {
        Var x = folio::constant(Tensor({1, 4}));
        Var w = folio::constant(Tensor({5, 3}));
        CHECK_THROWS_AS(folio::dense(x, w, nullptr), folio::DimensionError);
    }
}

TEST_CASE("conv1d values against brute force") {
    SUBCASE("delta kernel is identity at stride 1") {
        Var x = folio::constant(Tensor::from_vector({1, 1, 5}, {0, 0, 1, 0, 0}));
        Var w = folio::constant(Tensor::from_vector({1, 1, 5}, {0, 0, 1, 0, 0}));
        Var y = folio::conv1d(x, w, 1);
        REQUIRE(y->value.dim(2) == 5);
        for (int t = 0; t < 5; ++t) CHECK(y->value.at3(0, 0, t) == x->value.at3(0, 0, t));
    }
    SUBCASE("sliding sum with zero padding, stride 2") {
        const std::vector<double> xs = {1, 2, 3, 4};
        Var x = folio::constant(Tensor::from_vector({1, 1, 4}, xs));
        Var w = folio::constant(Tensor::from_vector({1, 1, 5}, {1, 1, 1, 1, 1}));
        Var y = folio::conv1d(x, w, 2);

        const auto cp = folio::conv_pad(4, 5, 2);
        REQUIRE(y->value.dim(2) == cp.t_out);
        for (int to = 0; to < cp.t_out; ++to) {
            double want = 0.0;
            for (int k = 0; k < 5; ++k) {
                const int idx = to * 2 + k - cp.pad_left;
                if (idx >= 0 && idx < 4) want += xs[static_cast<std::size_t>(idx)];
            }
            CHECK(y->value.at3(0, 0, to) == doctest::Approx(want));
        }
    }
    SUBCASE("random multi-channel against direct summation") {
        folio::Rng rng(11);
        Var x = folio::constant(rand_tensor({2, 3, 9}, rng));
        Var w = folio::constant(rand_tensor({4, 3, 5}, rng));
        Var y = folio::conv1d(x, w, 2);
        const auto cp = folio::conv_pad(9, 5, 2);
        for (int b = 0; b < 2; ++b) {
            for (int co = 0; co < 4; ++co) {
                for (int to = 0; to < cp.t_out; ++to) {
                    double want = 0.0;
                    for (int ci = 0; ci < 3; ++ci) {
                        for (int k = 0; k < 5; ++k) {
                            const int idx = to * 2 + k - cp.pad_left;
                            if (idx >= 0 && idx < 9) {
                                want += x->value.at3(b, ci, idx) * w->value.at3(co, ci, k);
                            }
                        }
                    }
                    CHECK(y->value.at3(b, co, to) == doctest::Approx(want).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("ceil-division length chain 40 -> 20 -> 10 -> 5 -> 3") {
        int t = 40;
        std::vector<int> lengths;
        for (int layer = 0; layer < 4; ++layer) {
            t = folio::conv_pad(t, 5, 2).t_out;
            lengths.push_back(t);
        }
        CHECK(lengths == std::vector<int>{20, 10, 5, 3});
    }
    SUBCASE("channel mismatch") {
        Var x = folio::constant(Tensor({1, 3, 8}));
        Var w = folio::constant(Tensor({4, 2, 5}));
        CHECK_THROWS_AS(folio::conv1d(x, w, 2), folio::DimensionError);
    }
}

TEST_CASE("transpose conv is the adjoint of conv") {
    folio::Rng rng(13);
    // Configurations the networks use, plus an odd-length one.
    const std::vector<std::vector<int>> configs = {
        {2, 3, 8, 4}, {1, 2, 40, 4}, {1, 2, 60, 4}, {2, 8, 5, 4}, {2, 4, 10, 2}, {1, 3, 9, 5},
    };
    for (const auto& c : configs) {
        const int batch = c[0], c_in = c[1], time = c[2], c_out = c[3];
        Var x = folio::constant(rand_tensor({batch, c_in, time}, rng));
        Var w = folio::constant(rand_tensor({c_out, c_in, 5}, rng));
        Var cx = folio::conv1d(x, w, 2);
        Var y = folio::constant(rand_tensor(cx->value.shape(), rng));
        Var ty = folio::tconv1d(y, w, 2, time);

        double lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < cx->value.size(); ++i) lhs += cx->value[i] * y->value[i];
        for (std::size_t i = 0; i < x->value.size(); ++i) rhs += x->value[i] * ty->value[i];
        CAPTURE(time);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("transpose conv doubles the time length") {
    folio::Rng rng(17);
    Var y = folio::constant(rand_tensor({1, 8, 5}, rng));
    Var w = folio::constant(rand_tensor({8, 4, 5}, rng));
    Var z = folio::tconv1d(y, w, 2, 10);
    CHECK(z->value.shape() == std::vector<int>{1, 4, 10});

    SUBCASE("delta input places kernel taps at stride offsets") {
        Tensor dy({1, 1, 3});
        dy.at3(0, 0, 1) = 1.0;
        Tensor dw({1, 1, 5});
        dw.at3(0, 0, 2) = 1.0;
        Var out = folio::tconv1d(folio::constant(dy), folio::constant(dw), 2, 6);
        // conv_pad(6,5,2) has pad_left 1; output index = to*stride + k - pad_left = 2*1+2-1.
        for (int t = 0; t < 6; ++t) {
            CHECK(out->value.at3(0, 0, t) == (t == 3 ? 1.0 : 0.0));
        }
    }
    SUBCASE("inconsistent out_time") {
        CHECK_THROWS_AS(folio::tconv1d(y, w, 2, 64), folio::DimensionError);
    }
}

TEST_CASE("first-order gradients match finite differences") {
    folio::Rng rng(23);

    SUBCASE("elementwise and reductions") {
        Var a = folio::leaf(rand_tensor_away_from_zero({3, 4}, rng));
        Var b = folio::leaf(rand_tensor_away_from_zero({3, 4}, rng));
        check_grads_fd(
            [&] {
                Var t = folio::add(folio::mul(a, b), folio::sub(a, b));
                t = folio::div(t, folio::add_scalar(folio::square(b), 1.0));
                t = folio::scale(t, 0.7);
                return folio::mean(t);
            },
            {a, b});
    }
    SUBCASE("relu and leaky relu") {
        Var a = folio::leaf(rand_tensor_away_from_zero({4, 5}, rng));
        check_grads_fd([&] { return folio::sum(folio::relu(a)); }, {a});
        check_grads_fd([&] { return folio::sum(folio::leaky_relu(a, 0.2)); }, {a});
    }
    SUBCASE("sqrt") {
        Var a = folio::leaf(rand_tensor({2, 6}, rng, 0.5, 2.0));
        check_grads_fd([&] { return folio::sum(folio::sqrt(a)); }, {a});
    }
    SUBCASE("batch reductions and broadcasts") {
        Var a = folio::leaf(rand_tensor({3, 4}, rng));
        Var s = folio::leaf(rand_tensor({3}, rng));
        Var c = folio::leaf(rand_tensor({1}, rng));
        check_grads_fd(
            [&] {
                Var t = folio::mul(a, folio::broadcast_per_sample(s, {3, 4}));
                t = folio::add(t, folio::broadcast_scalar(c, {3, 4}));
                Var rows = folio::sum_per_sample(folio::square(t));
                Var cols = folio::sum_batch(t);
                return folio::add(folio::sum(rows), folio::mean(cols));
            },
            {a, s, c});
    }
    SUBCASE("channel ops") {
        Var x = folio::leaf(rand_tensor({2, 3, 4}, rng));
        Var bias = folio::leaf(rand_tensor({3}, rng));
        check_grads_fd(
            [&] {
                Var t = folio::add_channel_bias(x, bias);
                return folio::sum(folio::square(folio::channel_sum(t)));
            },
            {x, bias});
    }
    SUBCASE("reshape, concat, slice") {
        Var a = folio::leaf(rand_tensor({2, 6}, rng));
        Var b = folio::leaf(rand_tensor({2, 3}, rng));
        check_grads_fd(
            [&] {
                Var r = folio::reshape(a, {2, 6});
                Var cat = folio::concat_features({r, b});
                Var sl = folio::slice_features(cat, 2, 5);
                return folio::sum(folio::square(sl));
            },
            {a, b});
    }
    SUBCASE("matmul family") {
        Var x = folio::leaf(rand_tensor({3, 4}, rng));
        Var w = folio::leaf(rand_tensor({2, 4}, rng));
        Var v = folio::leaf(rand_tensor({4, 5}, rng));
        Var u = folio::leaf(rand_tensor({3, 6}, rng));
        check_grads_fd([&] { return folio::sum(folio::square(folio::matmul_nt(x, w))); }, {x, w});
        check_grads_fd([&] { return folio::sum(folio::square(folio::matmul_nn(x, v))); }, {x, v});
        check_grads_fd([&] { return folio::sum(folio::square(folio::matmul_tn(x, u))); }, {x, u});
    }
    SUBCASE("dense with bias") {
        Var x = folio::leaf(rand_tensor({3, 4}, rng));
        Var w = folio::leaf(rand_tensor({2, 4}, rng));
        Var b = folio::leaf(rand_tensor({2}, rng));
        check_grads_fd([&] { return folio::mean(folio::square(folio::dense(x, w, b))); },
                       {x, w, b});
    }
    SUBCASE("conv family") {
        Var x = folio::leaf(rand_tensor({2, 3, 8}, rng));
        Var w = folio::leaf(rand_tensor({4, 3, 5}, rng));
        check_grads_fd([&] { return folio::sum(folio::square(folio::conv1d(x, w, 2))); }, {x, w});

        Var y = folio::leaf(rand_tensor({2, 4, 4}, rng));
        check_grads_fd([&] { return folio::sum(folio::square(folio::tconv1d(y, w, 2, 8))); },
                       {y, w});

        Var g = folio::leaf(rand_tensor({2, 4, 4}, rng));
        check_grads_fd(
            [&] { return folio::sum(folio::square(folio::conv1d_kernel_grad(x, g, 2, 5))); },
            {x, g});
    }
}

TEST_CASE("input gradients and second order") {
    SUBCASE("quadratic hand check") {
        Var x = folio::leaf(Tensor::scalar(3.0));
        Var y = folio::mul(x, x);
        Var gx = folio::gradients(y, {x}, true)[0];
        CHECK(gx->value.item() == doctest::Approx(6.0));

        Var z = folio::square(gx);
        Var ggx = folio::gradients(z, {x})[0];
        CHECK(ggx->value.item() == doctest::Approx(24.0));
    }
    SUBCASE("linear discriminator has zero second-order term") {
        Var x = folio::leaf(Tensor::from_vector({1, 3}, {0.3, -0.2, 0.9}));
        Var w = folio::leaf(Tensor::from_vector({1, 3}, {1.0, 2.0, -1.0}));
        Var out = folio::sum(folio::matmul_nt(x, w));
        Var gx = folio::gradients(out, {x}, true)[0];
        Var norm2 = folio::sum(folio::square(gx));
        Var gw = folio::gradients(norm2, {w})[0];
        // |grad_x|^2 = |w|^2, so d/dw = 2w, and there is no x dependence.
        CHECK(gw->value.at2(0, 0) == doctest::Approx(2.0));
        Var gxx = folio::gradients(norm2, {x})[0];
        for (std::size_t i = 0; i < gxx->value.size(); ++i) CHECK(gxx->value[i] == 0.0);
    }
    SUBCASE("gradient penalty parameter gradients vs finite differences") {
        folio::Rng rng(31);
        Var w1 = folio::leaf(rand_tensor({4, 3}, rng, -0.6, 0.6));
        Var b1 = folio::leaf(rand_tensor({4}, rng, -0.3, 0.3));
        Var w2 = folio::leaf(rand_tensor({1, 4}, rng, -0.6, 0.6));
        Var xhat = folio::leaf(rand_tensor({5, 3}, rng));

        auto penalty = [&]() -> Var {
            Var h = folio::leaky_relu(folio::dense(xhat, w1, b1), 0.2);
            Var d = folio::matmul_nt(h, w2);
            Var gx = folio::gradients(folio::sum(d), {xhat}, true)[0];
            Var norms = folio::sqrt(folio::sum_per_sample(folio::square(gx)));
            return folio::mean(folio::square(folio::add_scalar(norms, -1.0)));
        };

        Var gp = penalty();
        auto grads = folio::gradients(gp, {w1, b1, w2});
        const std::vector<Var> params = {w1, b1, w2};
        for (std::size_t i = 0; i < params.size(); ++i) {
            Tensor fd = oracles::fd_gradient(params[i]->value,
                                             [&] { return penalty()->value.item(); });
            CAPTURE(i);
            CHECK(oracles::max_rel_err(grads[i]->value, fd) < 1e-3);
        }
    }
    SUBCASE("second order through the conv ops") {
        folio::Rng rng(37);
        Var w = folio::leaf(rand_tensor({2, 2, 5}, rng, -0.5, 0.5));
        Var xhat = folio::leaf(rand_tensor({3, 2, 8}, rng));

        auto penalty = [&]() -> Var {
            Var h = folio::leaky_relu(folio::conv1d(xhat, w, 2), 0.2);
            Var d = folio::sum_per_sample(h);
            Var gx = folio::gradients(folio::sum(d), {xhat}, true)[0];
            Var norms = folio::sqrt(folio::sum_per_sample(folio::square(gx)));
            return folio::mean(folio::square(folio::add_scalar(norms, -1.0)));
        };

        Var gp = penalty();
        Var gw = folio::gradients(gp, {w})[0];
        Tensor fd = oracles::fd_gradient(w->value, [&] { return penalty()->value.item(); });
        CHECK(oracles::max_rel_err(gw->value, fd) < 1e-3);
    }
    SUBCASE("rejects non-scalar roots") {
        Var x = folio::leaf(Tensor({2, 2}));
        CHECK_THROWS_AS(folio::gradients(x, {x}), folio::ContractError);
    }
}

TEST_CASE("adam") {
    SUBCASE("first step moves by exactly lr against unit gradient") {
        Var p = folio::leaf(Tensor::scalar(0.0));
        folio::Adam opt({p}, {});
        opt.step({folio::constant(Tensor::scalar(1.0))});
        CHECK(p->value.item() == doctest::Approx(-2e-5).epsilon(1e-9));
    }
    SUBCASE("zero gradient leaves params unchanged") {
        Var p = folio::leaf(Tensor::from_vector({2}, {0.4, -0.7}));
        folio::Adam opt({p}, {});
        opt.step({folio::constant(Tensor({2}))});
        CHECK(p->value[0] == 0.4);
        CHECK(p->value[1] == -0.7);
    }
    SUBCASE("deterministic across identical runs") {
        auto run = [] {
            folio::Rng rng(5);
            Var p = folio::leaf(rand_tensor({3, 3}, rng));
            folio::Adam opt({p}, {});
            for (int i = 0; i < 25; ++i) {
                Var loss = folio::sum(folio::square(p));
                auto g = folio::gradients(loss, {p});
                opt.step(g);
            }
            return p->value;
        };
        const Tensor a = run();
        const Tensor b = run();
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
    SUBCASE("converges on a quadratic") {
        Var p = folio::leaf(Tensor::scalar(1.0));
        folio::Adam opt({p}, {.lr = 0.05});
        for (int i = 0; i < 400; ++i) {
            Var loss = folio::square(p);
            opt.step(folio::gradients(loss, {p}));
        }
        CHECK(std::abs(p->value.item()) < 1e-2);
    }
    SUBCASE("shape mismatch") {
        Var p = folio::leaf(Tensor({2}));
        folio::Adam opt({p}, {});
        CHECK_THROWS_AS(opt.step({folio::constant(Tensor({3}))}), folio::DimensionError);
    }
}

TEST_CASE("spectral normalization") {
    folio::Rng rng(41);

    SUBCASE("diagonal matrix normalizes to unit top singular value") {
        Tensor w = Tensor::from_vector({2, 2}, {3.0, 0.0, 0.0, 1.0});
        auto st = folio::make_spectral_state(2, rng);
        for (int i = 0; i < 60; ++i) folio::spectral_normalize(w, st);
        const double top = oracles::top_singular_value(w.values(), 2, 2);
        CHECK(top == doctest::Approx(1.0).epsilon(1e-2));
    }
    SUBCASE("orthonormal matrix is a fixed point") {
        const double c = std::cos(0.7), s = std::sin(0.7);
        Tensor w = Tensor::from_vector({2, 2}, {c, -s, s, c});
        auto st = folio::make_spectral_state(2, rng);
        folio::spectral_normalize(w, st);
        CHECK(w.at2(0, 0) == doctest::Approx(c).epsilon(1e-6));
        CHECK(w.at2(1, 0) == doctest::Approx(s).epsilon(1e-6));
    }
    SUBCASE("random 8x8 lands in [0.99, 1.01] after 50 iterations") {
        Tensor w = rand_tensor({8, 8}, rng);
        auto st = folio::make_spectral_state(8, rng);
        for (int i = 0; i < 50; ++i) folio::spectral_normalize(w, st);
        const double top = oracles::top_singular_value(w.values(), 8, 8);
        CHECK(top >= 0.99);
        CHECK(top <= 1.01);
    }
    SUBCASE("estimate converges on a fixed kernel") {
        Tensor w = rand_tensor({6, 10}, rng);
        auto st = folio::make_spectral_state(6, rng);
        double sigma = 0.0;
        for (int i = 0; i < 50; ++i) sigma = folio::spectral_estimate(w, st);
        const double exact = oracles::top_singular_value(w.values(), 6, 10);
        CHECK(std::abs(sigma - exact) / exact < 1e-2);
        CHECK(st.iterations == 50);
    }
    SUBCASE("conv kernel view uses rows x (cin*k)") {
        Tensor w = rand_tensor({4, 3, 5}, rng);
        auto st = folio::make_spectral_state(4, rng);
        for (int i = 0; i < 50; ++i) folio::spectral_normalize(w, st);
        const double top = oracles::top_singular_value(w.values(), 4, 15);
        CHECK(top == doctest::Approx(1.0).epsilon(1e-2));
    }
    SUBCASE("zero kernel flags degenerate and stays put") {
        Tensor w({3, 3});
        auto st = folio::make_spectral_state(3, rng);
        const double sigma = folio::spectral_normalize(w, st);
        CHECK(sigma == 0.0);
        CHECK(st.last_degenerate);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == 0.0);
    }
    SUBCASE("u stays unit norm") {
        Tensor w = rand_tensor({5, 7}, rng);
        auto st = folio::make_spectral_state(5, rng);
        for (int i = 0; i < 10; ++i) {
            folio::spectral_normalize(w, st);
            double n = 0.0;
            for (std::size_t j = 0; j < st.u.size(); ++j) n += st.u[j] * st.u[j];
            CHECK(std::sqrt(n) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("no-grad guard produces constants") {
    Var a = folio::leaf(Tensor::scalar(2.0));
    {
        folio::NoGradGuard guard;
        Var b = folio::square(a);
        CHECK_FALSE(b->requires_grad);
        CHECK(b->parents.empty());
    }
    Var c = folio::square(a);
    CHECK(c->requires_grad);
}

TEST_CASE("non-finite op results raise") {
    Var a = folio::leaf(Tensor::scalar(1.0));
    Var z = folio::constant(Tensor::scalar(0.0));
    CHECK_THROWS_AS(folio::div(a, z), folio::NumericError);
    CHECK_THROWS_AS(folio::sqrt(folio::constant(Tensor::scalar(-1.0))), folio::NumericError);
}
