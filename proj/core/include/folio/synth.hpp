#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folio/price_table.hpp"

namespace folio {

/// Correlated geometric Brownian motion toy market. Drift and volatility are
/// per-day log-return parameters.
struct SynthConfig {
    int assets = 2;
    int days = 400;
    std::vector<double> drift;        // default 0.0004 per asset
    std::vector<double> vol;          // default 0.015 per asset
    std::vector<double> correlation;  // A x A row-major; default identity
    std::vector<double> start_price;  // default 100
    std::vector<std::string> tickers; // default SYN1..SYNA
    std::string start_date = "2000-01-03";
    std::uint64_t seed = 1;
};

PriceTable synth_correlated_gbm(const SynthConfig& cfg);

/// Cholesky factor of a symmetric PSD matrix; tolerates zero pivots (perfect
/// correlation). Throws ConfigError when the matrix is not PSD.
std::vector<double> psd_cholesky(const std::vector<double>& m, int n);

} // namespace folio
