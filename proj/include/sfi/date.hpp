#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sfi {

/// Plain calendar date. All series in this library live on a Monday-Friday
/// business-day axis; weekends never appear in any stored date vector.
using Date = std::chrono::sys_days;

inline bool is_weekend(Date d) {
    const std::chrono::weekday wd{d};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

/// Parses a strict `YYYY-MM-DD` string; rejects impossible calendar dates.
inline std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    for (int i = 0; i < 4; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        y = y * 10 + (c - '0');
    }
    for (int i = 5; i < 7; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        m = m * 10 + (c - '0');
    }
    for (int i = 8; i < 10; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        d = d * 10 + (c - '0');
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

inline std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return std::string{buf};
}

/// First business day strictly after `d`.
inline Date next_business_day(Date d) {
    do {
        d += std::chrono::days{1};
    } while (is_weekend(d));
    return d;
}

/// `d` itself when it is a business day, otherwise the next one.
inline Date snap_to_business_day(Date d) {
    while (is_weekend(d)) d += std::chrono::days{1};
    return d;
}

/// Every business day in the inclusive range [first, last].
inline std::vector<Date> business_days(Date first, Date last) {
    std::vector<Date> out;
    if (first > last) return out;
    out.reserve(std::size_t((last - first).count()) * 5 / 7 + 2);
    for (Date d = first; d <= last; d += std::chrono::days{1}) {
        if (!is_weekend(d)) out.push_back(d);
    }
    return out;
}

inline std::size_t count_business_days(Date first, Date last) {
    std::size_t n = 0;
    for (Date d = first; d <= last; d += std::chrono::days{1}) {
        if (!is_weekend(d)) ++n;
    }
    return n;
}

}  // namespace sfi
