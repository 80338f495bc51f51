#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sfi/errors.hpp"
#include "sfi/ingest.hpp"
#include "sfi/netcorr.hpp"
#include "sfi/visibility.hpp"
#include "sfi/windows.hpp"

namespace sfi {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline Date require_date(std::string_view text, std::size_t line_no) {
    const auto d = parse_date(text);
    if (!d) throw MalformedRow(line_no, "bad date \"" + std::string(text) + "\"");
    return *d;
}

inline double require_double(std::string_view text, std::size_t line_no) {
    const auto v = parse_double(text);
    if (!v) throw MalformedRow(line_no, "bad number \"" + std::string(text) + "\"");
    return *v;
}

inline void require_header(std::istream& in, std::string_view expected, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(line_no + 1, "missing header");
    ++line_no;
    strip_cr(line);
    if (line != expected)
        throw MalformedRow(line_no, "expected header \"" + std::string(expected) + "\", got \"" +
                                        line + "\"");
}

}  // namespace detail

// --- price series ----------------------------------------------------------

inline void write_price_csv(const PriceSeries& series, std::ostream& out) {
    out << "date,close\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_date(series.dates[i]) << ',' << format_double(series.prices[i]) << '\n';
}

// --- windowed SF series ------------------------------------------------------

inline void write_sf_series_csv(const SFSeries& series, std::ostream& out) {
    out << "window_end,shannon,fisher,sf\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.dates[i]) << ',';
        if (const auto& v = series.values[i]) {
            out << format_double(v->shannon) << ',' << format_double(v->fisher) << ','
                << format_double(v->sf);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

inline SFSeries parse_sf_series_csv(std::istream& in, std::string market_id = {}) {
    SFSeries series;
    series.market_id = std::move(market_id);
    std::size_t line_no = 0;
    detail::require_header(in, "window_end,shannon,fisher,sf", line_no);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 4) throw MalformedRow(line_no, "expected 4 fields: \"" + line + "\"");
        series.dates.push_back(detail::require_date(f[0], line_no));
        if (f[1].empty() && f[2].empty() && f[3].empty()) {
            series.values.emplace_back(std::nullopt);
        } else {
            series.values.emplace_back(SFPoint{detail::require_double(f[1], line_no),
                                               detail::require_double(f[2], line_no),
                                               detail::require_double(f[3], line_no)});
        }
    }
    return series;
}

/// Long-format scan over several markets: `market,window_end,sf`, one row
/// per window, empty sf for missing windows.
inline void write_combined_sf_csv(std::span<const SFSeries> all, std::ostream& out) {
    out << "market,window_end,sf\n";
    for (const SFSeries& series : all) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            out << series.market_id << ',' << format_date(series.dates[i]) << ',';
            if (const auto& v = series.values[i]) out << format_double(v->sf);
            out << '\n';
        }
    }
}

// --- risk series -------------------------------------------------------------

inline void write_risk_series_csv(const RiskSeries& series, std::ostream& out) {
    out << "# global_sf=" << format_double(series.global_sf.sf) << '\n';
    out << "date,sfr\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.dates[i]) << ',';
        if (const auto& v = series.sfr[i]) out << format_double(*v);
        out << '\n';
    }
}

/// Reads a risk CSV back. Only the sf component of the whole-series index
/// is stored in the file, so global_sf.shannon and .fisher come back as
/// NaN; dates and sfr values round-trip exactly.
inline RiskSeries parse_risk_series_csv(std::istream& in, std::string market_id = {}) {
    RiskSeries series;
    series.market_id = std::move(market_id);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    series.global_sf = {nan, nan, nan};

    std::size_t line_no = 0;
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(1, "empty file");
    ++line_no;
    detail::strip_cr(line);
    constexpr std::string_view kGlobalPrefix = "# global_sf=";
    if (line.rfind(kGlobalPrefix, 0) == 0) {
        series.global_sf.sf = detail::require_double(
            std::string_view(line).substr(kGlobalPrefix.size()), line_no);
    } else if (line != "date,sfr") {
        throw MalformedRow(line_no, "expected \"# global_sf=...\" or header, got \"" + line + "\"");
    }
    if (line.rfind("#", 0) == 0) detail::require_header(in, "date,sfr", line_no);

    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 2) throw MalformedRow(line_no, "expected 2 fields: \"" + line + "\"");
        series.dates.push_back(detail::require_date(f[0], line_no));
        if (f[1].empty())
            series.sfr.emplace_back(std::nullopt);
        else
            series.sfr.emplace_back(detail::require_double(f[1], line_no));
    }
    return series;
}

// --- crisis reports -----------------------------------------------------------

inline void write_crises_csv(std::span<const CrisisPeriod> periods, std::ostream& out) {
    out << "start,end,peak_date,peak_sfr\n";
    for (const CrisisPeriod& c : periods) {
        out << format_date(c.start) << ',' << format_date(c.end) << ',' << format_date(c.peak_date)
            << ',' << format_double(c.peak_sfr) << '\n';
    }
}

inline std::vector<CrisisPeriod> parse_crises_csv(std::istream& in) {
    std::vector<CrisisPeriod> out;
    std::size_t line_no = 0;
    detail::require_header(in, "start,end,peak_date,peak_sfr", line_no);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 4) throw MalformedRow(line_no, "expected 4 fields: \"" + line + "\"");
        out.push_back({detail::require_date(f[0], line_no), detail::require_date(f[1], line_no),
                       detail::require_date(f[2], line_no), detail::require_double(f[3], line_no)});
    }
    return out;
}

/// Crisis report across markets, one row per flagged period.
inline void write_combined_crises_csv(
    std::span<const std::pair<std::string, CrisisPeriod>> periods, std::ostream& out) {
    out << "market,start,end,peak_date,peak_sfr\n";
    for (const auto& [market, c] : periods) {
        out << market << ',' << format_date(c.start) << ',' << format_date(c.end) << ','
            << format_date(c.peak_date) << ',' << format_double(c.peak_sfr) << '\n';
    }
}

// --- visibility graph dumps -----------------------------------------------------

inline void write_vg_dot(const WeightedVisibilityGraph& g, std::ostream& out) {
    out << "graph vg {\n";
    for (const VgEdge& e : g.edges)
        out << "  " << e.i << " -- " << e.j << " [weight=" << format_double(e.w) << "];\n";
    out << "}\n";
}

inline void write_vg_edge_csv(const WeightedVisibilityGraph& g, std::ostream& out) {
    out << "i,j,w\n";
    for (const VgEdge& e : g.edges)
        out << e.i << ',' << e.j << ',' << format_double(e.w) << '\n';
}

inline WeightedVisibilityGraph parse_vg_edge_csv(std::istream& in) {
    WeightedVisibilityGraph g;
    std::size_t line_no = 0;
    detail::require_header(in, "i,j,w", line_no);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 3) throw MalformedRow(line_no, "expected 3 fields: \"" + line + "\"");
        const auto i = detail::require_double(f[0], line_no);
        const auto j = detail::require_double(f[1], line_no);
        g.edges.push_back({std::int32_t(i), std::int32_t(j), detail::require_double(f[2], line_no)});
        g.n = std::max(g.n, std::int32_t(j) + 1);
    }
    return g;
}

// --- correlation networks ---------------------------------------------------------

inline void write_network_edge_csv(const ThresholdNetwork& net, std::ostream& out) {
    out << "a,b,r\n";
    for (const NetworkEdge& e : net.edges) {
        out << net.nodes[std::size_t(e.a)] << ',' << net.nodes[std::size_t(e.b)] << ','
            << format_double(e.r) << '\n';
    }
}

inline void write_network_dot(const ThresholdNetwork& net, std::ostream& out) {
    out << "graph netcorr {\n";
    for (const std::string& node : net.nodes) out << "  \"" << node << "\";\n";
    for (const NetworkEdge& e : net.edges) {
        out << "  \"" << net.nodes[std::size_t(e.a)] << "\" -- \"" << net.nodes[std::size_t(e.b)]
            << "\" [r=" << format_double(e.r) << "];\n";
    }
    out << "}\n";
}

inline void write_network_json(const ThresholdNetwork& net, std::ostream& out) {
    nlohmann::json j;
    j["threshold"] = net.threshold;
    j["nodes"] = net.nodes;
    auto edges = nlohmann::json::array();
    for (const NetworkEdge& e : net.edges) {
        edges.push_back({{"a", net.nodes[std::size_t(e.a)]},
                         {"b", net.nodes[std::size_t(e.b)]},
                         {"r", e.r}});
    }
    j["edges"] = std::move(edges);
    out << j.dump(2) << '\n';
}

inline void write_matrix_csv(const CorrelationMatrix& matrix, std::ostream& out) {
    out << "market";
    for (const std::string& m : matrix.markets) out << ',' << m;
    out << '\n';
    for (std::size_t i = 0; i < matrix.markets.size(); ++i) {
        out << matrix.markets[i];
        for (std::size_t j = 0; j < matrix.markets.size(); ++j)
            out << ',' << format_double(matrix.r[i][j]);
        out << '\n';
    }
}

/// Reads back a coefficient matrix. The CSV carries market ids and
/// coefficients only, so support counts come back as zeros.
inline CorrelationMatrix parse_matrix_csv(std::istream& in) {
    CorrelationMatrix out;
    std::size_t line_no = 0;
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(1, "missing header");
    ++line_no;
    detail::strip_cr(line);
    const auto header = detail::split_fields(line);
    if (header.empty() || header[0] != "market")
        throw MalformedRow(line_no, "expected header starting with \"market\"");
    for (std::size_t i = 1; i < header.size(); ++i) out.markets.emplace_back(header[i]);

    const std::size_t m = out.markets.size();
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != m + 1) throw MalformedRow(line_no, "expected " + std::to_string(m + 1) +
                                                               " fields: \"" + line + "\"");
        std::vector<double> row;
        row.reserve(m);
        for (std::size_t j = 1; j < f.size(); ++j) row.push_back(detail::require_double(f[j], line_no));
        out.r.push_back(std::move(row));
    }
    if (out.r.size() != m)
        throw MalformedRow(line_no, "expected " + std::to_string(m) + " rows, got " +
                                        std::to_string(out.r.size()));
    out.support.assign(m, std::vector<std::int64_t>(m, 0));
    return out;
}

}  // namespace sfi
