#pragma once

#include <string>
#include <utility>
#include <vector>

namespace folio {

/// Immutable table of adjusted close prices, A assets by T trading days.
/// Construction validates the invariants; all later code may assume them.
class PriceTable {
public:
    PriceTable(std::vector<std::string> tickers, std::vector<std::string> dates,
               std::vector<double> prices /* row-major A x T */);

    int assets() const { return static_cast<int>(tickers_.size()); }
    int days() const { return static_cast<int>(dates_.size()); }

    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::vector<std::string>& dates() const { return dates_; }
    const std::string& date(int day) const { return dates_[static_cast<std::size_t>(day)]; }

    double price(int asset, int day) const {
        return prices_[static_cast<std::size_t>(asset) * dates_.size() +
                       static_cast<std::size_t>(day)];
    }

    /// Day index of an exact date, or -1.
    int find_date(const std::string& date) const;
    /// First day index with date >= the given ISO date (days() if none).
    int lower_bound_date(const std::string& date) const;

    /// Copy of the day range [from, to).
    PriceTable slice_days(int from, int to) const;

private:
    std::vector<std::string> tickers_;
    std::vector<std::string> dates_;
    std::vector<double> prices_;
};

/// Parses the wide CSV format `date,<ticker1>,...,<tickerA>`.
PriceTable load_csv(const std::string& path);

/// Writes the same wide CSV format; load_csv(save_csv(t)) == t.
void save_csv(const PriceTable& table, const std::string& path);

/// Day-over-day ratio screen: returns (asset, day) pairs where
/// max(p(t)/p(t-1), p(t-1)/p(t)) exceeds the threshold.
std::vector<std::pair<int, int>> sanity_spikes(const PriceTable& table, double max_ratio = 5.0);

/// ISO calendar helpers used for synthetic date axes.
std::string iso_date_from_day_number(std::int64_t days_since_epoch);
std::int64_t day_number_from_iso_date(const std::string& date);

} // namespace folio
