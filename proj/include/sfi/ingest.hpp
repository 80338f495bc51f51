#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "sfi/date.hpp"
#include "sfi/errors.hpp"

namespace sfi {

/// Calendar-aligned daily closing prices for one market.
/// Invariants: dates strictly increasing, business days only; prices
/// strictly positive and finite; both vectors the same length.
struct PriceSeries {
    std::string market_id;
    std::vector<Date> dates;
    std::vector<double> prices;

    std::size_t size() const { return dates.size(); }
    bool operator==(const PriceSeries&) const = default;
};

/// Per-day return values derived from a PriceSeries; each value is dated
/// by the later day of the price pair that produced it.
struct ReturnSeries {
    std::string market_id;
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
    bool operator==(const ReturnSeries&) const = default;
};

enum class ReturnMode { Log, Simple };

namespace detail {

inline std::optional<double> parse_double(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace detail

/// Parses a `date,close` CSV stream into a PriceSeries. Rows may arrive in
/// any order; the result is sorted by date. Weekend rows, duplicate dates
/// and non-positive prices are rejected.
inline PriceSeries parse_price_csv(std::istream& in, std::string market_id = {}) {
    PriceSeries out;
    out.market_id = std::move(market_id);

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "date,close")
                throw MalformedRow(line_no, "expected header \"date,close\", got \"" + line + "\"");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw MalformedRow(line_no, "expected exactly two fields: \"" + line + "\"");
        const std::string_view date_text{line.data(), comma};
        const std::string_view close_text{line.data() + comma + 1, line.size() - comma - 1};

        const auto date = parse_date(date_text);
        if (!date) throw MalformedRow(line_no, "bad date \"" + std::string(date_text) + "\"");
        if (is_weekend(*date)) throw WeekendDate(format_date(*date));

        const auto close = detail::parse_double(close_text);
        if (!close) throw MalformedRow(line_no, "bad price \"" + std::string(close_text) + "\"");
        if (!std::isfinite(*close) || *close <= 0.0)
            throw NonPositivePrice(line_no, "price must be positive and finite, got \"" +
                                                std::string(close_text) + "\"");

        out.dates.push_back(*date);
        out.prices.push_back(*close);
    }
    if (!header_seen && line_no > 0)
        throw MalformedRow(1, "expected header \"date,close\"");

    // Sort rows by date, keeping date/price pairs together.
    std::vector<std::size_t> order(out.dates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.dates[a] < out.dates[b]; });
    PriceSeries sorted;
    sorted.market_id = out.market_id;
    sorted.dates.reserve(out.dates.size());
    sorted.prices.reserve(out.prices.size());
    for (const std::size_t i : order) {
        if (!sorted.dates.empty() && sorted.dates.back() == out.dates[i])
            throw DuplicateDate(format_date(out.dates[i]));
        sorted.dates.push_back(out.dates[i]);
        sorted.prices.push_back(out.prices[i]);
    }
    return sorted;
}

/// Loads one price CSV from disk; the market id is the file stem.
inline PriceSeries load_price_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_price_csv(in, path.stem().string());
}

/// Expands a series to cover every business day between its endpoints.
/// Dates absent from the input (exchange holidays) receive prices linearly
/// interpolated, on the business-day axis, between the nearest surrounding
/// observed prices. Observed prices are never altered. Idempotent.
inline PriceSeries align_to_calendar(const PriceSeries& series) {
    if (series.dates.empty()) throw EmptySeries();

    PriceSeries out;
    out.market_id = series.market_id;
    out.dates = business_days(series.dates.front(), series.dates.back());
    out.prices.assign(out.dates.size(), 0.0);

    // Mark observed grid positions, then fill the gaps between them.
    std::vector<std::size_t> observed;
    observed.reserve(series.size());
    std::size_t next_input = 0;
    for (std::size_t g = 0; g < out.dates.size(); ++g) {
        if (next_input < series.dates.size() && series.dates[next_input] == out.dates[g]) {
            out.prices[g] = series.prices[next_input];
            observed.push_back(g);
            ++next_input;
        }
    }
    for (std::size_t k = 0; k + 1 < observed.size(); ++k) {
        const std::size_t g0 = observed[k], g1 = observed[k + 1];
        const double p0 = out.prices[g0], p1 = out.prices[g1];
        for (std::size_t g = g0 + 1; g < g1; ++g) {
            const double t = double(g - g0) / double(g1 - g0);
            out.prices[g] = p0 + (p1 - p0) * t;
        }
    }
    return out;
}

/// Day-over-day return rates. Log mode: ln(p_t / p_{t-1}); simple mode:
/// (p_t - p_{t-1}) / p_{t-1}. Output has one fewer point than the input.
inline ReturnSeries compute_returns(const PriceSeries& series, ReturnMode mode = ReturnMode::Log) {
    if (series.size() < 2) throw SeriesTooShort(2, series.size());
    ReturnSeries out;
    out.market_id = series.market_id;
    out.dates.assign(series.dates.begin() + 1, series.dates.end());
    out.values.reserve(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) {
        const double prev = series.prices[t - 1], cur = series.prices[t];
        out.values.push_back(mode == ReturnMode::Log ? std::log(cur / prev)
                                                     : (cur - prev) / prev);
    }
    return out;
}

}  // namespace sfi
