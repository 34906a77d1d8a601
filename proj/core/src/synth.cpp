#include "folio/synth.hpp"

#include <cmath>

#include "folio/errors.hpp"
#include "folio/rng.hpp"

namespace folio {

std::vector<double> psd_cholesky(const std::vector<double>& m, int n) {
    if (m.size() != static_cast<std::size_t>(n) * n) {
        throw DimensionError("psd_cholesky: matrix size mismatch");
    }
    const auto at = [&](const std::vector<double>& v, int i, int j) -> double {
        return v[static_cast<std::size_t>(i) * n + j];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (std::abs(at(m, i, j) - at(m, j, i)) > 1e-12) {
                throw ConfigError("correlation matrix is not symmetric");
            }
        }
    }
    std::vector<double> l(m.size(), 0.0);
    for (int j = 0; j < n; ++j) {
        double d = at(m, j, j);
        for (int k = 0; k < j; ++k) d -= at(l, j, k) * at(l, j, k);
        if (d < -1e-10) throw ConfigError("correlation matrix is not positive semi-definite");
        const double pivot = std::sqrt(std::max(d, 0.0));
        l[static_cast<std::size_t>(j) * n + j] = pivot;
        for (int i = j + 1; i < n; ++i) {
            double s = at(m, i, j);
            for (int k = 0; k < j; ++k) s -= at(l, i, k) * at(l, j, k);
            if (pivot > 1e-12) {
                l[static_cast<std::size_t>(i) * n + j] = s / pivot;
            } else if (std::abs(s) > 1e-8) {
                throw ConfigError("correlation matrix is not positive semi-definite");
            }
        }
    }
    return l;
}

PriceTable synth_correlated_gbm(const SynthConfig& cfg) {
    if (cfg.assets <= 0) throw ConfigError("synth: assets must be positive");
    if (cfg.days < 2) throw ConfigError("synth: need at least 2 days");
    const int a_count = cfg.assets;

    const auto fill_default = [a_count](std::vector<double> v, double def,
                                        const char* name) -> std::vector<double> {
        if (v.empty()) v.assign(static_cast<std::size_t>(a_count), def);
        if (v.size() != static_cast<std::size_t>(a_count)) {
            throw ConfigError(std::string("synth: ") + name + " must have one entry per asset");
        }
        return v;
    };
    const std::vector<double> drift = fill_default(cfg.drift, 0.0004, "drift");
    const std::vector<double> vol = fill_default(cfg.vol, 0.015, "vol");
    const std::vector<double> start = fill_default(cfg.start_price, 100.0, "start_price");
    for (double v : vol) {
        if (v < 0.0) throw ConfigError("synth: volatility must be nonnegative");
    }
    for (double s : start) {
        if (s <= 0.0) throw ConfigError("synth: start prices must be positive");
    }

    std::vector<double> corr = cfg.correlation;
    if (corr.empty()) {
        corr.assign(static_cast<std::size_t>(a_count) * a_count, 0.0);
        for (int i = 0; i < a_count; ++i) corr[static_cast<std::size_t>(i) * a_count + i] = 1.0;
    }
    for (int i = 0; i < a_count; ++i) {
        if (std::abs(corr[static_cast<std::size_t>(i) * a_count + i] - 1.0) > 1e-12) {
            throw ConfigError("correlation matrix diagonal must be 1");
        }
    }
    const std::vector<double> chol = psd_cholesky(corr, a_count);

    std::vector<std::string> tickers = cfg.tickers;
    if (tickers.empty()) {
        for (int a = 0; a < a_count; ++a) tickers.push_back("SYN" + std::to_string(a + 1));
    }
    if (tickers.size() != static_cast<std::size_t>(a_count)) {
        throw ConfigError("synth: tickers must have one entry per asset");
    }

    std::vector<std::string> dates;
    dates.reserve(static_cast<std::size_t>(cfg.days));
    const std::int64_t day0 = day_number_from_iso_date(cfg.start_date);
    for (int d = 0; d < cfg.days; ++d) dates.push_back(iso_date_from_day_number(day0 + d));

    Rng rng = derive_rng(cfg.seed, {0x53594e54ull});  // "SYNT"
    std::vector<double> logp(static_cast<std::size_t>(a_count));
    for (int a = 0; a < a_count; ++a) logp[static_cast<std::size_t>(a)] = std::log(start[a]);

    std::vector<double> prices(static_cast<std::size_t>(a_count) * cfg.days);
    for (int a = 0; a < a_count; ++a) {
        prices[static_cast<std::size_t>(a) * cfg.days] = start[static_cast<std::size_t>(a)];
    }
    std::vector<double> eps(static_cast<std::size_t>(a_count));
    for (int d = 1; d < cfg.days; ++d) {
        for (auto& e : eps) e = rng.normal();
        for (int a = 0; a < a_count; ++a) {
            double z = 0.0;
            for (int k = 0; k <= a; ++k) {
                z += chol[static_cast<std::size_t>(a) * a_count + k] *
                     eps[static_cast<std::size_t>(k)];
            }
            const std::size_t ai = static_cast<std::size_t>(a);
            logp[ai] += drift[ai] + vol[ai] * z;
            prices[ai * cfg.days + d] = std::exp(logp[ai]);
        }
    }
    return PriceTable(std::move(tickers), std::move(dates), std::move(prices));
}

} // namespace folio
