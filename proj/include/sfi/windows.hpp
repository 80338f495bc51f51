#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfi/errors.hpp"
#include "sfi/infotheory.hpp"
#include "sfi/ingest.hpp"
#include "sfi/parallel.hpp"
#include "sfi/visibility.hpp"

namespace sfi {

/// SF index per sliding window, each point labeled by the window's last
/// date. A window whose weight distribution has degenerate Fisher
/// information is kept as a missing point.
struct SFSeries {
    std::string market_id;
    std::vector<Date> dates;
    std::vector<std::optional<SFPoint>> values;

    std::size_t size() const { return dates.size(); }
};

/// Daily risk estimator: trailing-window SF divided by the whole-series SF.
/// Values persistently above 1 mark windows more unstable than the series
/// as a whole.
struct RiskSeries {
    std::string market_id;
    SFPoint global_sf{};
    std::vector<Date> dates;
    std::vector<std::optional<double>> sfr;

    std::size_t size() const { return dates.size(); }
};

/// Maximal run of consecutive days with the risk estimator above a level.
struct CrisisPeriod {
    Date start{};
    Date end{};
    Date peak_date{};
    double peak_sfr = 0.0;
    bool operator==(const CrisisPeriod&) const = default;
};

namespace detail {

inline std::optional<SFPoint> window_sf(std::span<const double> segment, int bins,
                                        WeightMode mode) {
    try {
        return sf_index(weight_pdf(build_vg_fast(segment, mode), bins));
    } catch (const DegenerateFisher&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// Windowed SF scan: windows of `window` points placed at offsets
/// 0, step, 2*step, ... as long as a full window fits. Windows are
/// independent, so they may be computed on `jobs` threads; the output is
/// identical for any thread count.
inline SFSeries sliding_sf(const ReturnSeries& returns, int window = 504, int step = 63,
                           int bins = 50, WeightMode mode = WeightMode::Signed, int jobs = 1) {
    if (window < 4) throw BadWindowParams("window must be >= 4, got " + std::to_string(window));
    if (step < 1) throw BadWindowParams("step must be >= 1, got " + std::to_string(step));
    if (returns.size() < std::size_t(window)) throw SeriesTooShort(std::size_t(window), returns.size());

    const std::size_t count = (returns.size() - std::size_t(window)) / std::size_t(step) + 1;
    SFSeries out;
    out.market_id = returns.market_id;
    out.dates.resize(count);
    out.values.resize(count);
    parallel_for_index(count, jobs, [&](std::size_t w) {
        const std::size_t offset = w * std::size_t(step);
        const std::span<const double> segment{returns.values.data() + offset, std::size_t(window)};
        out.dates[w] = returns.dates[offset + std::size_t(window) - 1];
        out.values[w] = detail::window_sf(segment, bins, mode);
    });
    return out;
}

/// Daily risk series: for every date from index window-1 on, the SF of the
/// trailing `window` returns (the labeled day included) divided by the SF of
/// the entire series.
inline RiskSeries sf_risk_series(const ReturnSeries& returns, int window = 252, int bins = 50,
                                 WeightMode mode = WeightMode::Signed, int jobs = 1) {
    if (window < 4) throw BadWindowParams("window must be >= 4, got " + std::to_string(window));
    if (returns.size() < std::size_t(window)) throw SeriesTooShort(std::size_t(window), returns.size());

    RiskSeries out;
    out.market_id = returns.market_id;
    const auto global = detail::window_sf(returns.values, bins, mode);
    if (!global) throw DegenerateGlobal("whole-series SF is undefined (degenerate Fisher)");
    if (global->sf == 0.0) throw DegenerateGlobal("whole-series SF is zero");
    out.global_sf = *global;

    const std::size_t count = returns.size() - std::size_t(window) + 1;
    out.dates.resize(count);
    out.sfr.resize(count);
    parallel_for_index(count, jobs, [&](std::size_t i) {
        const std::span<const double> segment{returns.values.data() + i, std::size_t(window)};
        out.dates[i] = returns.dates[i + std::size_t(window) - 1];
        if (const auto sf = detail::window_sf(segment, bins, mode))
            out.sfr[i] = sf->sf / out.global_sf.sf;
        else
            out.sfr[i] = std::nullopt;
    });
    return out;
}

/// Maximal runs of consecutive non-missing points with sfr > level, kept
/// when at least `min_run` long. Missing points break runs. Each period
/// reports its peak value and the (first) date attaining it.
inline std::vector<CrisisPeriod> flag_crises(const RiskSeries& risk, double level = 1.0,
                                             int min_run = 5) {
    std::vector<CrisisPeriod> out;
    std::size_t run_start = 0;
    std::size_t run_len = 0;
    std::size_t peak_at = 0;

    auto close_run = [&](std::size_t end_index) {
        if (run_len >= std::size_t(min_run)) {
            out.push_back({risk.dates[run_start], risk.dates[end_index], risk.dates[peak_at],
                           *risk.sfr[peak_at]});
        }
        run_len = 0;
    };

    for (std::size_t i = 0; i < risk.size(); ++i) {
        const auto& v = risk.sfr[i];
        if (v && *v > level) {
            if (run_len == 0) {
                run_start = i;
                peak_at = i;
            } else if (*v > *risk.sfr[peak_at]) {
                peak_at = i;
            }
            ++run_len;
        } else if (run_len > 0) {
            close_run(i - 1);
        }
    }
    if (run_len > 0) close_run(risk.size() - 1);
    return out;
}

}  // namespace sfi
