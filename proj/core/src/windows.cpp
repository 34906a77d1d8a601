#include "folio/windows.hpp"

#include <algorithm>

#include "folio/errors.hpp"

namespace folio {

bool MarketWindow::any_degenerate() const {
    return std::any_of(degenerate.begin(), degenerate.end(), [](bool d) { return d; });
}

std::vector<RawWindow> make_windows(const PriceTable& table, int wb, int wf, int stride) {
    if (wb <= 0 || wf <= 0) throw ContractError("make_windows: wb and wf must be positive");
    if (stride <= 0) throw ContractError("make_windows: stride must be positive");
    const int w = wb + wf;
    const int span = w + 1;
    if (table.days() < span) {
        throw DataError("table has " + std::to_string(table.days()) + " days; need at least " +
                        std::to_string(span) + " for Wb=" + std::to_string(wb) +
                        ", Wf=" + std::to_string(wf));
    }
    std::vector<RawWindow> out;
    for (int start = 0; start + span <= table.days(); start += stride) {
        RawWindow rw;
        rw.wb = wb;
        rw.wf = wf;
        rw.anchor_day = start + wb;  // leading day sits at index 0
        rw.anchor_date = table.date(rw.anchor_day);
        rw.prices = Tensor({table.assets(), span});
        for (int a = 0; a < table.assets(); ++a) {
            for (int t = 0; t < span; ++t) rw.prices.at2(a, t) = table.price(a, start + t);
        }
        out.push_back(std::move(rw));
    }
    return out;
}

MarketWindow normalize_window(const RawWindow& raw) {
    const int assets = raw.prices.dim(0);
    const int wb = raw.wb;
    const int wf = raw.wf;
    const int span = wb + wf + 1;
    if (raw.prices.dim(1) != span) {
        throw DimensionError("normalize_window: window carries " +
                             std::to_string(raw.prices.dim(1)) + " prices, expected " +
                             std::to_string(span));
    }

    MarketWindow mw;
    mw.wb = wb;
    mw.wf = wf;
    mw.anchor_date = raw.anchor_date;
    mw.backward = Tensor({assets, wb});
    mw.forward = Tensor({assets, wf});
    mw.pmin.resize(static_cast<std::size_t>(assets));
    mw.pmax.resize(static_cast<std::size_t>(assets));
    mw.analysis.resize(static_cast<std::size_t>(assets));
    mw.anchor_norm.resize(static_cast<std::size_t>(assets));
    mw.anchor_raw.resize(static_cast<std::size_t>(assets));
    mw.degenerate.resize(static_cast<std::size_t>(assets));

    for (int a = 0; a < assets; ++a) {
        // Affine params over the wb backward days (window indices 1..wb);
        // the leading price at index 0 only supplies the first variation.
        double lo = raw.prices.at2(a, 1);
        double hi = lo;
        double total = 0.0;
        for (int t = 1; t <= wb; ++t) {
            const double p = raw.prices.at2(a, t);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            total += p;
        }
        const double pmean = total / wb;
        const std::size_t ai = static_cast<std::size_t>(a);
        mw.pmin[ai] = lo;
        mw.pmax[ai] = hi;
        mw.anchor_raw[ai] = raw.prices.at2(a, wb);
        mw.degenerate[ai] = hi == lo;

        if (mw.degenerate[ai]) {
            mw.analysis[ai] = 0.0;
            mw.anchor_norm[ai] = 0.0;
            continue;  // variations already zero
        }
        mw.analysis[ai] = (hi - lo) / pmean;

        const auto scaled = [lo, hi](double p) { return 2.0 * (p - lo) / (hi - lo) - 1.0; };
        double prev = scaled(raw.prices.at2(a, 0));
        for (int t = 1; t < span; ++t) {
            const double cur = scaled(raw.prices.at2(a, t));
            if (t <= wb) {
                mw.backward.at2(a, t - 1) = cur - prev;
            } else {
                mw.forward.at2(a, t - wb - 1) = cur - prev;
            }
            prev = cur;
        }
        mw.anchor_norm[ai] = scaled(raw.prices.at2(a, wb));
    }
    return mw;
}

Tensor denormalize_path(const Tensor& variations, const MarketWindow& window) {
    const int assets = window.assets();
    if (variations.rank() != 2 || variations.dim(0) != assets) {
        throw DimensionError("denormalize_path: variations " + variations.shape_str() +
                             " do not match " + std::to_string(assets) + " assets");
    }
    const int horizon = variations.dim(1);
    Tensor prices({assets, horizon});
    for (int a = 0; a < assets; ++a) {
        const std::size_t ai = static_cast<std::size_t>(a);
        if (window.degenerate[ai]) {
            for (int t = 0; t < horizon; ++t) prices.at2(a, t) = window.anchor_raw[ai];
            continue;
        }
        const double half_range = (window.pmax[ai] - window.pmin[ai]) / 2.0;
        double ptilde = window.anchor_norm[ai];
        for (int t = 0; t < horizon; ++t) {
            ptilde += variations.at2(a, t);
            prices.at2(a, t) = (ptilde + 1.0) * half_range + window.pmin[ai];
        }
    }
    return prices;
}

} // namespace folio
