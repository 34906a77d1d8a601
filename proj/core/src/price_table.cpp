#include "folio/price_table.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "folio/errors.hpp"
#include "folio/io.hpp"

namespace folio {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool valid_iso_date(const std::string& d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!is_digit(d[i])) return false;
    }
    const int month = (d[5] - '0') * 10 + (d[6] - '0');
    const int day = (d[8] - '0') * 10 + (d[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

} // namespace

PriceTable::PriceTable(std::vector<std::string> tickers, std::vector<std::string> dates,
                       std::vector<double> prices)
    : tickers_(std::move(tickers)), dates_(std::move(dates)), prices_(std::move(prices)) {
    if (tickers_.empty()) throw DataError("price table has no assets");
    if (dates_.empty()) throw DataError("price table has no dates");
    if (prices_.size() != tickers_.size() * dates_.size()) {
        throw DataError("price table size mismatch: " + std::to_string(prices_.size()) +
                        " prices for " + std::to_string(tickers_.size()) + " assets x " +
                        std::to_string(dates_.size()) + " days");
    }
    std::unordered_set<std::string> seen;
    for (const auto& t : tickers_) {
        if (t.empty()) throw DataError("empty ticker name");
        if (!seen.insert(t).second) throw DataError("duplicate ticker '" + t + "'");
    }
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (!valid_iso_date(dates_[i])) {
            throw DataError("invalid ISO date '" + dates_[i] + "' at row " + std::to_string(i + 1));
        }
        if (i > 0 && dates_[i] <= dates_[i - 1]) {
            throw DataError("dates not strictly increasing at '" + dates_[i] + "' (row " +
                            std::to_string(i + 1) + ")");
        }
    }
    for (std::size_t a = 0; a < tickers_.size(); ++a) {
        for (std::size_t d = 0; d < dates_.size(); ++d) {
            const double p = prices_[a * dates_.size() + d];
            if (!std::isfinite(p)) {
                throw DataError("non-finite price for " + tickers_[a] + " on " + dates_[d]);
            }
            if (p <= 0.0) {
                throw DataError("non-positive price " + format_double(p) + " for " + tickers_[a] +
                                " on " + dates_[d]);
            }
        }
    }
}

int PriceTable::find_date(const std::string& date) const {
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
    if (it != dates_.end() && *it == date) return static_cast<int>(it - dates_.begin());
    return -1;
}

int PriceTable::lower_bound_date(const std::string& date) const {
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
    return static_cast<int>(it - dates_.begin());
}

PriceTable PriceTable::slice_days(int from, int to) const {
    if (from < 0 || to > days() || from >= to) {
        throw DataError("invalid day slice [" + std::to_string(from) + ", " + std::to_string(to) +
                        ") of " + std::to_string(days()) + " days");
    }
    std::vector<std::string> dates(dates_.begin() + from, dates_.begin() + to);
    std::vector<double> prices;
    prices.reserve(tickers_.size() * static_cast<std::size_t>(to - from));
    for (int a = 0; a < assets(); ++a) {
        for (int d = from; d < to; ++d) prices.push_back(price(a, d));
    }
    return PriceTable(tickers_, std::move(dates), std::move(prices));
}

PriceTable load_csv(const std::string& path) {
    const auto lines = split_lines(read_text_file(path));
    if (lines.empty()) throw DataError(path + ": empty file");

    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "date") {
        throw DataError(path + ": header must be 'date,<ticker>,...', got '" + lines[0] + "'");
    }
    std::vector<std::string> tickers(header.begin() + 1, header.end());
    const std::size_t columns = header.size();

    std::vector<std::string> dates;
    std::vector<std::vector<double>> by_day;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = split_csv_line(lines[i]);
        if (cells.size() != columns) {
            throw DataError(path + " row " + std::to_string(i + 1) + ": expected " +
                            std::to_string(columns) + " cells, got " +
                            std::to_string(cells.size()));
        }
        dates.push_back(cells[0]);
        std::vector<double> row(tickers.size());
        for (std::size_t a = 0; a < tickers.size(); ++a) {
            if (cells[a + 1].empty()) {
                throw DataError(path + " row " + std::to_string(i + 1) + ": blank price for " +
                                tickers[a] + " on " + cells[0]);
            }
            row[a] = parse_double(cells[a + 1], path + " row " + std::to_string(i + 1) + ", " +
                                                    tickers[a]);
        }
        by_day.push_back(std::move(row));
    }
    if (dates.empty()) throw DataError(path + ": no data rows");

    // Transpose to the row-major A x T layout.
    std::vector<double> prices(tickers.size() * dates.size());
    for (std::size_t d = 0; d < dates.size(); ++d) {
        for (std::size_t a = 0; a < tickers.size(); ++a) {
            prices[a * dates.size() + d] = by_day[d][a];
        }
    }
    return PriceTable(std::move(tickers), std::move(dates), std::move(prices));
}

void save_csv(const PriceTable& table, const std::string& path) {
    std::string out = "date";
    for (const auto& t : table.tickers()) {
        out += ',';
        out += t;
    }
    out += '\n';
    for (int d = 0; d < table.days(); ++d) {
        out += table.date(d);
        for (int a = 0; a < table.assets(); ++a) {
            out += ',';
            out += format_double(table.price(a, d));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<std::pair<int, int>> sanity_spikes(const PriceTable& table, double max_ratio) {
    if (max_ratio <= 1.0) throw ContractError("sanity_spikes: max_ratio must exceed 1");
    std::vector<std::pair<int, int>> hits;
    for (int a = 0; a < table.assets(); ++a) {
        for (int d = 1; d < table.days(); ++d) {
            const double r = table.price(a, d) / table.price(a, d - 1);
            if (r > max_ratio || 1.0 / r > max_ratio) hits.emplace_back(a, d);
        }
    }
    return hits;
}

// Civil-calendar conversions (proleptic Gregorian), epoch 1970-01-01.
std::string iso_date_from_day_number(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t day = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t month = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t year = y + (month <= 2);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lld", static_cast<long long>(year),
                  static_cast<long long>(month), static_cast<long long>(day));
    return std::string(buf);
}

std::int64_t day_number_from_iso_date(const std::string& date) {
    if (!valid_iso_date(date)) throw DataError("invalid ISO date '" + date + "'");
    const std::int64_t year = std::stoll(date.substr(0, 4));
    const std::int64_t month = std::stoll(date.substr(5, 2));
    const std::int64_t day = std::stoll(date.substr(8, 2));
    const std::int64_t y = year - (month <= 2);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t mp = month > 2 ? month - 3 : month + 9;
    const std::int64_t doy = (153 * mp + 2) / 5 + day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

} // namespace folio
