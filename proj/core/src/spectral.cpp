#include "folio/spectral.hpp"

#include <cmath>
#include <vector>

#include "folio/errors.hpp"

namespace folio {

namespace {

constexpr double kTiny = 1e-12;

double norm2(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

} // namespace

SpectralState make_spectral_state(int rows, Rng& rng) {
    if (rows <= 0) throw ContractError("make_spectral_state: rows must be positive");
    SpectralState st;
    st.u = Tensor({rows});
    double n = 0.0;
    while (n < kTiny) {
        for (std::size_t i = 0; i < st.u.size(); ++i) st.u[i] = rng.normal();
        double acc = 0.0;
        for (std::size_t i = 0; i < st.u.size(); ++i) acc += st.u[i] * st.u[i];
        n = std::sqrt(acc);
    }
    for (std::size_t i = 0; i < st.u.size(); ++i) st.u[i] /= n;
    return st;
}

double spectral_estimate(const Tensor& w, SpectralState& state) {
    if (w.rank() < 2) throw DimensionError("spectral_estimate: kernel must have rank >= 2");
    const int rows = w.dim(0);
    const std::size_t cols = w.size() / static_cast<std::size_t>(rows);
    if (state.u.size() != static_cast<std::size_t>(rows)) {
        throw DimensionError("spectral_estimate: state u length " +
                             std::to_string(state.u.size()) + " vs " + std::to_string(rows) +
                             " rows");
    }

    // v = W'u / |W'u|
    std::vector<double> v(cols, 0.0);
    for (int i = 0; i < rows; ++i) {
        const double ui = state.u[static_cast<std::size_t>(i)];
        const double* wrow = w.data() + static_cast<std::size_t>(i) * cols;
        for (std::size_t j = 0; j < cols; ++j) v[j] += ui * wrow[j];
    }
    const double vn = norm2(v);
    if (vn < kTiny) {
        state.last_degenerate = true;
        return 0.0;
    }
    for (auto& vj : v) vj /= vn;

    // u = Wv / |Wv|
    std::vector<double> u(static_cast<std::size_t>(rows), 0.0);
    for (int i = 0; i < rows; ++i) {
        const double* wrow = w.data() + static_cast<std::size_t>(i) * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += wrow[j] * v[j];
        u[static_cast<std::size_t>(i)] = acc;
    }
    const double un = norm2(u);
    if (un < kTiny) {
        state.last_degenerate = true;
        return 0.0;
    }
    for (std::size_t i = 0; i < u.size(); ++i) state.u[i] = u[i] / un;

    // sigma = u'Wv with the refreshed u; equals |Wv| by construction.
    state.last_degenerate = false;
    state.iterations += 1;
    return un;
}

double spectral_normalize(Tensor& w, SpectralState& state) {
    const double sigma = spectral_estimate(w, state);
    if (state.last_degenerate || sigma < kTiny) return sigma;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] /= sigma;
    return sigma;
}

} // namespace folio
