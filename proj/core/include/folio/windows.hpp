#pragma once

#include <string>
#include <vector>

#include "folio/price_table.hpp"
#include "folio/tensor.hpp"

namespace folio {

/// W+1 raw prices per asset: one leading day (so the first backward variation
/// exists), Wb backward days, Wf forward days. The anchor is the last
/// backward day, at in-window index wb.
struct RawWindow {
    Tensor prices;  // A x (wb + wf + 1)
    int wb = 0;
    int wf = 0;
    int anchor_day = 0;  // day index of the anchor within the source table
    std::string anchor_date;
};

/// Normalized view of a RawWindow: variations plus everything needed to both
/// feed the networks and invert the normalization later.
struct MarketWindow {
    Tensor backward;  // A x wb variations
    Tensor forward;   // A x wf variations
    std::vector<double> pmin;         // per asset, over the backward days
    std::vector<double> pmax;
    std::vector<double> analysis;     // a = (pmax - pmin) / pmean
    std::vector<double> anchor_norm;  // scaled anchor price
    std::vector<double> anchor_raw;
    std::vector<bool> degenerate;     // pmax == pmin
    int wb = 0;
    int wf = 0;
    std::string anchor_date;

    int assets() const { return static_cast<int>(anchor_raw.size()); }
    bool any_degenerate() const;
};

/// Sliding windows over the table; count = T - (W+1) + 1 at stride 1.
std::vector<RawWindow> make_windows(const PriceTable& table, int wb, int wf, int stride = 1);

MarketWindow normalize_window(const RawWindow& raw);

/// Inverts the normalization: cumulative-sum `variations` (A x wf) from the
/// anchor, then map through the backward affine params. Degenerate assets
/// stay at their anchor price.
Tensor denormalize_path(const Tensor& variations, const MarketWindow& window);

} // namespace folio
