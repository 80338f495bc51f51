#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfi/errors.hpp"
#include "sfi/windows.hpp"

namespace sfi {

/// Risk curves restricted to dates where every market has a value.
struct AlignedCurves {
    std::vector<std::string> markets;
    std::vector<Date> dates;
    std::vector<std::vector<double>> values;  // one row per market
};

/// Symmetric Pearson matrix over market risk curves, with the number of
/// overlapping dates behind each coefficient.
struct CorrelationMatrix {
    std::vector<std::string> markets;
    std::vector<std::vector<double>> r;
    std::vector<std::vector<std::int64_t>> support;
};

/// Correlations either over the single date set common to all markets
/// (default; every entry shares one support) or over per-pair overlaps.
enum class SupportMode { Common, Pairwise };

struct NetworkEdge {
    std::int32_t a;
    std::int32_t b;  // b > a
    double r;
    bool operator==(const NetworkEdge&) const = default;
};

/// Undirected graph linking markets whose correlation reaches a threshold.
/// Isolated markets stay in the node list.
struct ThresholdNetwork {
    double threshold = 0.0;
    std::vector<std::string> nodes;
    std::vector<NetworkEdge> edges;
};

inline constexpr std::size_t kMinOverlap = 30;

namespace detail {

/// Dates of `s` carrying a value, in ascending order.
inline std::vector<Date> present_dates(const RiskSeries& s) {
    std::vector<Date> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.sfr[i]) out.push_back(s.dates[i]);
    }
    return out;
}

/// Values of `s` at the given sorted dates; every date must be present.
inline std::vector<double> values_at(const RiskSeries& s, const std::vector<Date>& dates) {
    std::vector<double> out;
    out.reserve(dates.size());
    std::size_t i = 0;
    for (const Date d : dates) {
        while (i < s.size() && s.dates[i] < d) ++i;
        out.push_back(*s.sfr[i]);
    }
    return out;
}

}  // namespace detail

/// Sorted intersection of all series' non-missing dates, plus one value row
/// per market over those dates. Fewer than `min_overlap` common dates is an
/// error: a correlation over a handful of days is meaningless.
inline AlignedCurves align_common_dates(const std::vector<RiskSeries>& series,
                                        std::size_t min_overlap = kMinOverlap) {
    if (series.size() < 2)
        throw LengthMismatch("need at least 2 series, got " + std::to_string(series.size()));

    std::vector<Date> common = detail::present_dates(series.front());
    for (std::size_t s = 1; s < series.size() && !common.empty(); ++s) {
        const std::vector<Date> other = detail::present_dates(series[s]);
        std::vector<Date> next;
        next.reserve(std::min(common.size(), other.size()));
        std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.size() < min_overlap)
        throw InsufficientOverlap("only " + std::to_string(common.size()) +
                                  " common dates across " + std::to_string(series.size()) +
                                  " markets, need " + std::to_string(min_overlap));

    AlignedCurves out;
    out.dates = std::move(common);
    out.markets.reserve(series.size());
    out.values.reserve(series.size());
    for (const RiskSeries& s : series) {
        out.markets.push_back(s.market_id);
        out.values.push_back(detail::values_at(s, out.dates));
    }
    return out;
}

/// Sample Pearson correlation coefficient. Constant input has no defined
/// correlation and raises ZeroVariance.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("length mismatch: " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    if (x.size() < 2) throw LengthMismatch("need at least 2 points, got " + std::to_string(x.size()));

    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    if (*xmin == *xmax) throw ZeroVariance("first argument is constant");
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    if (*ymin == *ymax) throw ZeroVariance("second argument is constant");

    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("degenerate variance");
    return sxy / std::sqrt(sxx * syy);
}

/// Pearson matrix over risk curves. Common mode correlates every pair over
/// one shared date set; Pairwise uses each pair's own overlap.
inline CorrelationMatrix correlation_matrix(const std::vector<RiskSeries>& series,
                                            SupportMode mode = SupportMode::Common,
                                            std::size_t min_overlap = kMinOverlap) {
    const std::size_t m = series.size();
    CorrelationMatrix out;
    out.r.assign(m, std::vector<double>(m, 1.0));
    out.support.assign(m, std::vector<std::int64_t>(m, 0));

    if (mode == SupportMode::Common) {
        const AlignedCurves aligned = align_common_dates(series, min_overlap);
        out.markets = aligned.markets;
        const auto overlap = std::int64_t(aligned.dates.size());
        for (std::size_t i = 0; i < m; ++i) {
            out.support[i][i] = overlap;
            for (std::size_t j = i + 1; j < m; ++j) {
                const double r = pearson(aligned.values[i], aligned.values[j]);
                out.r[i][j] = out.r[j][i] = r;
                out.support[i][j] = out.support[j][i] = overlap;
            }
        }
        return out;
    }

    if (m < 2) throw LengthMismatch("need at least 2 series, got " + std::to_string(m));
    out.markets.reserve(m);
    for (const RiskSeries& s : series) out.markets.push_back(s.market_id);
    std::vector<std::vector<Date>> dates(m);
    for (std::size_t i = 0; i < m; ++i) {
        dates[i] = detail::present_dates(series[i]);
        out.support[i][i] = std::int64_t(dates[i].size());
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<Date> both;
            std::set_intersection(dates[i].begin(), dates[i].end(), dates[j].begin(),
                                  dates[j].end(), std::back_inserter(both));
            if (both.size() < min_overlap)
                throw InsufficientOverlap("pair " + series[i].market_id + "/" +
                                          series[j].market_id + " overlaps on only " +
                                          std::to_string(both.size()) + " dates, need " +
                                          std::to_string(min_overlap));
            const double r =
                pearson(detail::values_at(series[i], both), detail::values_at(series[j], both));
            out.r[i][j] = out.r[j][i] = r;
            out.support[i][j] = out.support[j][i] = std::int64_t(both.size());
        }
    }
    return out;
}

/// Links every pair with r >= tau. All markets stay in the node list, so
/// isolated markets remain visible in exports.
inline ThresholdNetwork threshold_network(const CorrelationMatrix& matrix, double tau) {
    if (!(tau >= -1.0 && tau <= 1.0)) throw BadThreshold(tau);
    ThresholdNetwork net;
    net.threshold = tau;
    net.nodes = matrix.markets;
    const std::size_t m = matrix.markets.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (matrix.r[i][j] >= tau)
                net.edges.push_back({std::int32_t(i), std::int32_t(j), matrix.r[i][j]});
        }
    }
    return net;
}

}  // namespace sfi
