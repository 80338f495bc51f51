#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "sfi/date.hpp"
#include "sfi/errors.hpp"
#include "sfi/ingest.hpp"

namespace sfi {

namespace detail {

/// Standard-normal stream via explicit Box-Muller over 53-bit uniforms.
/// A seed pins the exact same draw sequence on every standard library,
/// unlike std::normal_distribution, whose algorithm is implementation
/// defined.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();  // in (0, 1], so log stays finite
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double next_unit() { return double((rng_() >> 11) + 1) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace detail

/// Synthetic daily price scenarios, stand-ins for proprietary market feeds.
///  - Gaussian: i.i.d. normal log returns, flat volatility.
///  - Burst:    same, with volatility multiplied by burst_factor for
///              burst_days days centered on the series midpoint.
///  - Trend:    Gaussian plus a constant positive log drift.
enum class Scenario { Gaussian, Burst, Trend };

struct SynthConfig {
    Scenario scenario = Scenario::Gaussian;
    int length = 2016;  // number of daily closes
    std::uint64_t seed = 0;
    double base_sigma = 0.01;   // daily log-return standard deviation
    double burst_factor = 5.0;  // volatility multiplier inside the burst
    int burst_days = 60;
    double drift = 5.0e-4;  // per-day log drift (Trend only)
    double start_price = 100.0;
    Date start_date = Date{std::chrono::year{1995} / std::chrono::January / 2};
    std::string market_id = "SYN";
};

/// Inclusive day-index interval, in price-series positions.
struct DayInterval {
    int first = 0;
    int last = 0;
};

/// Day indices whose returns carry the burst volatility: `burst_days`
/// consecutive days centered on the series midpoint.
inline DayInterval burst_interval(int length, int burst_days = 60) {
    const int first = length / 2 - burst_days / 2;
    return {first, first + burst_days - 1};
}

/// Deterministic synthetic price series: a geometric random walk on
/// consecutive business days. Identical config -> identical series.
inline PriceSeries synth_prices(const SynthConfig& cfg) {
    if (cfg.length < 2) throw SeriesTooShort(2, std::size_t(std::max(cfg.length, 0)));

    PriceSeries out;
    out.market_id = cfg.market_id;
    out.dates.reserve(std::size_t(cfg.length));
    out.prices.reserve(std::size_t(cfg.length));

    detail::NormalStream unit(cfg.seed);
    const DayInterval burst = burst_interval(cfg.length, cfg.burst_days);

    Date d = snap_to_business_day(cfg.start_date);
    double log_price = std::log(cfg.start_price);
    for (int t = 0; t < cfg.length; ++t) {
        if (t > 0) {
            double sigma = cfg.base_sigma;
            if (cfg.scenario == Scenario::Burst && t >= burst.first && t <= burst.last)
                sigma *= cfg.burst_factor;
            const double mu = cfg.scenario == Scenario::Trend ? cfg.drift : 0.0;
            log_price += mu + sigma * unit();
            d = next_business_day(d);
        }
        out.dates.push_back(d);
        out.prices.push_back(std::exp(log_price));
    }
    return out;
}

}  // namespace sfi
