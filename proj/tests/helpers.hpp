#pragma once

// Shared generators for the test suites. All randomness is seeded mt19937_64
// so every run sees the same data.

#include <cstdint>
#include <random>
#include <vector>

#include <sfi/sfi.hpp>

namespace test {

inline std::vector<double> uniform_segment(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                           double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

inline std::vector<double> gaussian_segment(std::size_t n, std::uint64_t seed, double mean = 0.0,
                                            double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mean, sd);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

inline std::vector<double> walk_segment(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    double level = 0.0;
    for (double& v : out) {
        level += dist(rng);
        v = level;
    }
    return out;
}

/// Small-integer-valued segments stress exact ties and collinear runs.
inline std::vector<double> small_int_segment(std::size_t n, std::uint64_t seed, int hi = 4) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, hi);
    std::vector<double> out(n);
    for (double& v : out) v = double(dist(rng));
    return out;
}

/// Wraps raw values into a ReturnSeries on consecutive business days.
inline sfi::ReturnSeries make_returns(std::vector<double> values, std::string market = "TST") {
    sfi::ReturnSeries out;
    out.market_id = std::move(market);
    sfi::Date d{std::chrono::year{2000} / std::chrono::January / 3};  // a Monday
    out.dates.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.dates.push_back(d);
        d = sfi::next_business_day(d);
    }
    out.values = std::move(values);
    return out;
}

/// Wraps raw prices into a PriceSeries on consecutive business days.
inline sfi::PriceSeries make_prices(std::vector<double> prices, std::string market = "TST") {
    sfi::PriceSeries out;
    out.market_id = std::move(market);
    sfi::Date d{std::chrono::year{2000} / std::chrono::January / 3};
    out.dates.reserve(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        out.dates.push_back(d);
        d = sfi::next_business_day(d);
    }
    out.prices = std::move(prices);
    return out;
}

}  // namespace test
