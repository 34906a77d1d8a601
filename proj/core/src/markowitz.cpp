#include "folio/markowitz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "folio/errors.hpp"
#include "folio/rng.hpp"

namespace folio {

namespace {

// Gaussian elimination with partial pivoting; a is n x n row-major.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * n + col])) {
                pivot = r;
            }
        }
        if (std::abs(a[static_cast<std::size_t>(pivot) * n + col]) < 1e-14) {
            throw NumericError("singular system in QP polish");
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a[static_cast<std::size_t>(pivot) * n + c],
                          a[static_cast<std::size_t>(col) * n + c]);
            }
            std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<std::size_t>(r) * n + col] /
                             a[static_cast<std::size_t>(col) * n + col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) {
                a[static_cast<std::size_t>(r) * n + c] -=
                    f * a[static_cast<std::size_t>(col) * n + c];
            }
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) {
            acc -= a[static_cast<std::size_t>(r) * n + c] * x[static_cast<std::size_t>(c)];
        }
        x[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r) * n + r];
    }
    return x;
}

std::vector<double> sigma_times(const MarkowitzModel& m, const std::vector<double>& x) {
    const int n = m.assets();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += m.sigma[static_cast<std::size_t>(i) * n + j] * x[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Diversification proj_simplex(std::vector<double> y) {
    std::vector<double> u = y;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double cand = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - cand > 0.0) {
            rho = static_cast<int>(j + 1);
            theta = cand;
        }
    }
    for (auto& yi : y) yi = std::max(yi - theta, 0.0);
    // Guard against accumulated rounding so the invariant is exact-ish.
    double total = std::accumulate(y.begin(), y.end(), 0.0);
    if (total > 0.0 && std::abs(total - 1.0) > 1e-15) {
        for (auto& yi : y) yi /= total;
    }
    (void)rho;
    return y;
}

// Projection onto {x on simplex, mu.x >= target}; assumes target is
// achievable (target <= max mu).
Diversification proj_simplex_with_return(const std::vector<double>& y,
                                         const std::vector<double>& mu, double target) {
    Diversification x = proj_simplex(y);
    if (dot(mu, x) >= target - 1e-12) return x;

    // proj(y + t*mu) has a nondecreasing return in t; bracket then bisect.
    double lo = 0.0, hi = 1.0;
    auto value = [&](double t) {
        std::vector<double> shifted(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) shifted[i] = y[i] + t * mu[i];
        return proj_simplex(std::move(shifted));
    };
    Diversification xhi = value(hi);
    int guard = 0;
    while (dot(mu, xhi) < target && guard++ < 80) {
        hi *= 2.0;
        xhi = value(hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        Diversification xm = value(mid);
        if (dot(mu, xm) >= target) {
            hi = mid;
            xhi = std::move(xm);
        } else {
            lo = mid;
        }
    }
    return xhi;
}

double top_eigenvalue(const MarkowitzModel& m) {
    const int n = m.assets();
    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> w = sigma_times(m, v);
        const double norm = std::sqrt(dot(w, w));
        if (norm < 1e-30) return 0.0;
        for (auto& wi : w) wi /= norm;
        lambda = norm;
        v = std::move(w);
    }
    return lambda;
}

// Equality-constrained solve on the support found by the iterative phase;
// returns false when the guessed active set is inconsistent with the KKT
// conditions.
bool polish_qp(const MarkowitzModel& model, double target, bool return_active,
               const std::vector<int>& support, Diversification& x) {
    const int n = model.assets();
    const int s = static_cast<int>(support.size());
    const int rows = s + 1 + (return_active ? 1 : 0);
    std::vector<double> a(static_cast<std::size_t>(rows) * rows, 0.0);
    std::vector<double> b(static_cast<std::size_t>(rows), 0.0);

    // Stationarity rows: 2 Sigma_SS x_S - nu 1 - lambda mu_S = 0.
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            a[static_cast<std::size_t>(i) * rows + j] =
                2.0 * model.sigma[static_cast<std::size_t>(support[static_cast<std::size_t>(i)]) * n +
                                  support[static_cast<std::size_t>(j)]];
        }
        a[static_cast<std::size_t>(i) * rows + s] = -1.0;
        if (return_active) {
            a[static_cast<std::size_t>(i) * rows + s + 1] =
                -model.mu[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])];
        }
    }
    // sum x = 1.
    for (int j = 0; j < s; ++j) a[static_cast<std::size_t>(s) * rows + j] = 1.0;
    b[static_cast<std::size_t>(s)] = 1.0;
    // mu.x = target when the return constraint is tight.
    if (return_active) {
        for (int j = 0; j < s; ++j) {
            a[static_cast<std::size_t>(s + 1) * rows + j] =
                model.mu[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])];
        }
        b[static_cast<std::size_t>(s + 1)] = target;
    }

    std::vector<double> sol;
    try {
        sol = solve_linear(std::move(a), std::move(b), rows);
    } catch (const NumericError&) {
        return false;
    }

    const double lambda = return_active ? sol[static_cast<std::size_t>(s + 1)] : 0.0;
    if (lambda < -1e-10) return false;
    Diversification cand(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < s; ++i) {
        const double xi = sol[static_cast<std::size_t>(i)];
        if (xi < -1e-10) return false;
        cand[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])] = std::max(xi, 0.0);
    }
    // Dual feasibility off the support.
    const double nu = sol[static_cast<std::size_t>(s)];
    const std::vector<double> grad = sigma_times(model, cand);
    for (int i = 0; i < n; ++i) {
        if (cand[static_cast<std::size_t>(i)] > 0.0) continue;
        const double slack =
            2.0 * grad[static_cast<std::size_t>(i)] - nu - lambda * model.mu[static_cast<std::size_t>(i)];
        if (slack < -1e-8) return false;
    }
    double total = std::accumulate(cand.begin(), cand.end(), 0.0);
    for (auto& xi : cand) xi /= total;
    x = std::move(cand);
    return true;
}

} // namespace

MarkowitzModel markowitz_estimate(const PriceTable& train, int horizon) {
    if (horizon < 1) throw ContractError("markowitz_estimate: horizon must be positive");
    const int blocks = (train.days() - 1) / horizon;
    if (blocks < 2) {
        throw DataError("markowitz_estimate: " + std::to_string(train.days()) +
                        " days give only " + std::to_string(blocks) + " return blocks of " +
                        std::to_string(horizon) + " days; need at least 2");
    }
    const int n = train.assets();
    std::vector<double> returns(static_cast<std::size_t>(blocks) * n);
    for (int k = 0; k < blocks; ++k) {
        for (int a = 0; a < n; ++a) {
            returns[static_cast<std::size_t>(k) * n + a] =
                train.price(a, (k + 1) * horizon) / train.price(a, k * horizon);
        }
    }

    MarkowitzModel m;
    m.mu.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < blocks; ++k) {
        for (int a = 0; a < n; ++a) {
            m.mu[static_cast<std::size_t>(a)] += returns[static_cast<std::size_t>(k) * n + a];
        }
    }
    for (auto& mi : m.mu) mi /= blocks;

    m.sigma.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < blocks; ++k) {
        for (int i = 0; i < n; ++i) {
            const double di =
                returns[static_cast<std::size_t>(k) * n + i] - m.mu[static_cast<std::size_t>(i)];
            for (int j = i; j < n; ++j) {
                const double dj = returns[static_cast<std::size_t>(k) * n + j] -
                                  m.mu[static_cast<std::size_t>(j)];
                m.sigma[static_cast<std::size_t>(i) * n + j] += di * dj;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = m.sigma[static_cast<std::size_t>(i) * n + j] / (blocks - 1);
            m.sigma[static_cast<std::size_t>(i) * n + j] = v;
            m.sigma[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    return m;
}

double max_horizon_return(const PriceTable& train, int horizon) {
    if (horizon < 1) throw ContractError("max_horizon_return: horizon must be positive");
    const int blocks = (train.days() - 1) / horizon;
    if (blocks < 1) throw DataError("max_horizon_return: history shorter than one horizon");
    double best = 0.0;
    for (int k = 0; k < blocks; ++k) {
        for (int a = 0; a < train.assets(); ++a) {
            best = std::max(best, train.price(a, (k + 1) * horizon) / train.price(a, k * horizon));
        }
    }
    return best;
}

double RiskGrid::target(int zeta) const {
    if (zeta < 1 || zeta > levels()) {
        throw ContractError("risk level " + std::to_string(zeta) + " outside [1, " +
                            std::to_string(levels()) + "]");
    }
    return targets[static_cast<std::size_t>(zeta - 1)];
}

RiskGrid risk_grid(double r_max, int levels) {
    if (levels < 2) throw ConfigError("risk_grid: need at least 2 levels");
    if (r_max < 1.0) throw ContractError("risk_grid: r_max must be at least 1");
    RiskGrid g;
    g.r_max = r_max;
    const double top = 2.0 * r_max - 1.0;
    g.targets.resize(static_cast<std::size_t>(levels));
    for (int z = 1; z <= levels; ++z) {
        g.targets[static_cast<std::size_t>(z - 1)] =
            1.0 + (z - 1) * (top - 1.0) / (levels - 1);
    }
    return g;
}

Diversification markowitz_min_variance(const MarkowitzModel& model, double target_return) {
    const int n = model.assets();
    if (n < 1) throw ConfigError("markowitz: empty model");
    if (model.sigma.size() != static_cast<std::size_t>(n) * n) {
        throw DimensionError("markowitz: sigma is not A x A");
    }
    if (n == 1) return {1.0};

    // Unreachable targets clamp to the best-return vertex.
    const int best = static_cast<int>(std::max_element(model.mu.begin(), model.mu.end()) -
                                      model.mu.begin());
    if (target_return >= model.mu[static_cast<std::size_t>(best)] - 1e-12) {
        Diversification vertex(static_cast<std::size_t>(n), 0.0);
        vertex[static_cast<std::size_t>(best)] = 1.0;
        return vertex;
    }

    const double lambda_max = top_eigenvalue(model);
    Diversification x(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    x = proj_simplex_with_return(x, model.mu, target_return);
    if (lambda_max < 1e-30) return x;  // zero covariance: any feasible point is optimal

    // FISTA with adaptive restart.
    const double step = 1.0 / (2.0 * lambda_max * 1.01);
    Diversification prev = x;
    Diversification y = x;
    double t = 1.0;
    int stable = 0;
    for (int it = 0; it < 50000; ++it) {
        std::vector<double> grad = sigma_times(model, y);
        std::vector<double> shifted(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            shifted[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] - step * 2.0 * grad[static_cast<std::size_t>(i)];
        }
        Diversification next = proj_simplex_with_return(shifted, model.mu, target_return);

        double restart = 0.0;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            const double dx =
                next[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
            restart += (y[static_cast<std::size_t>(i)] - next[static_cast<std::size_t>(i)]) * dx;
            delta = std::max(delta, std::abs(dx));
        }
        prev = std::move(x);
        x = std::move(next);
        if (restart > 0.0) {
            t = 1.0;
            y = x;
        } else {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            y.assign(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                y[static_cast<std::size_t>(i)] =
                    x[static_cast<std::size_t>(i)] +
                    ((t - 1.0) / t_next) *
                        (x[static_cast<std::size_t>(i)] - prev[static_cast<std::size_t>(i)]);
            }
            t = t_next;
        }
        stable = delta < 1e-13 ? stable + 1 : 0;
        if (stable >= 10) break;
    }

    // Active-set polish for machine-precision KKT residuals.
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)] > 1e-9) support.push_back(i);
    }
    if (!support.empty()) {
        const bool tight = dot(model.mu, x) <= target_return + 1e-9;
        Diversification polished;
        if (polish_qp(model, target_return, tight, support, polished) &&
            dot(model.mu, polished) >= target_return - 1e-9) {
            return polished;
        }
        if (tight && polish_qp(model, target_return, false, support, polished) &&
            dot(model.mu, polished) >= target_return - 1e-9) {
            return polished;
        }
    }
    return x;
}

std::vector<Diversification> markowitz_frontier(const MarkowitzModel& model,
                                                const RiskGrid& grid) {
    std::vector<Diversification> out;
    out.reserve(static_cast<std::size_t>(grid.levels()));
    for (int z = 1; z <= grid.levels(); ++z) {
        out.push_back(markowitz_min_variance(model, grid.target(z)));
    }
    return out;
}

std::vector<ParetoPoint> select_by_risk(const ParetoSet& front, const RiskGrid& grid) {
    if (front.empty()) throw ContractError("select_by_risk: empty Pareto set");
    std::vector<ParetoPoint> out;
    out.reserve(static_cast<std::size_t>(grid.levels()));
    for (int z = 1; z <= grid.levels(); ++z) {
        const double target = grid.target(z);
        const ParetoPoint* best = &front[0];
        double best_gap = std::abs(target - front[0].ret);
        for (const auto& p : front) {
            const double gap = std::abs(target - p.ret);
            if (gap < best_gap || (gap == best_gap && p.var < best->var)) {
                best = &p;
                best_gap = gap;
            }
        }
        out.push_back(*best);
    }
    return out;
}

std::vector<Diversification> default_random(int levels, const MarkowitzModel& model,
                                            std::uint64_t seed) {
    if (levels < 1) throw ContractError("default_random: need at least one level");
    Rng rng = derive_rng(seed, {0x44464c54ull});  // "DFLT"
    std::vector<Diversification> draws;
    draws.reserve(static_cast<std::size_t>(levels));
    for (int z = 0; z < levels; ++z) draws.push_back(rng.simplex(model.assets()));
    std::stable_sort(draws.begin(), draws.end(),
                     [&](const Diversification& a, const Diversification& b) {
                         return model_return(model, a) < model_return(model, b);
                     });
    return draws;
}

double model_return(const MarkowitzModel& model, const Diversification& x) {
    return dot(model.mu, x);
}

double model_variance(const MarkowitzModel& model, const Diversification& x) {
    return dot(x, sigma_times(model, x));
}

} // namespace folio
