#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include <sfi/sfi.hpp>

#include "helpers.hpp"

using namespace sfi;
using Catch::Matchers::WithinAbs;

namespace {

RiskSeries make_curve(std::vector<double> values, std::string market, int start_offset = 0) {
    RiskSeries out;
    out.market_id = std::move(market);
    out.global_sf = {0.5, 0.01, 50.0};
    Date d{std::chrono::year{2010} / std::chrono::June / 1};
    for (int i = 0; i < start_offset; ++i) d = next_business_day(d);
    for (const double v : values) {
        out.dates.push_back(d);
        out.sfr.emplace_back(v);
        d = next_business_day(d);
    }
    return out;
}

CorrelationMatrix random_matrix(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    CorrelationMatrix out;
    for (std::size_t i = 0; i < m; ++i) out.markets.push_back("M" + std::to_string(i));
    out.r.assign(m, std::vector<double>(m, 1.0));
    out.support.assign(m, std::vector<std::int64_t>(m, 100));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) out.r[i][j] = out.r[j][i] = coeff(rng);
    }
    return out;
}

std::set<std::pair<int, int>> edge_set(const ThresholdNetwork& net) {
    std::set<std::pair<int, int>> out;
    for (const NetworkEdge& e : net.edges) out.insert({e.a, e.b});
    return out;
}

}  // namespace

TEST_CASE("align_common_dates keeps identical calendars whole") {
    const auto a = make_curve(test::uniform_segment(60, 1), "A");
    const auto b = make_curve(test::uniform_segment(60, 2), "B");
    const auto aligned = align_common_dates({a, b});
    CHECK(aligned.dates == a.dates);
    CHECK(aligned.markets == std::vector<std::string>{"A", "B"});
    REQUIRE(aligned.values.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(aligned.values[0][i] == *a.sfr[i]);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(aligned.values[1][i] == *b.sfr[i]);
}

TEST_CASE("align_common_dates rejects disjoint ranges") {
    const auto a = make_curve(test::uniform_segment(50, 3), "A", 0);
    const auto b = make_curve(test::uniform_segment(50, 4), "B", 100);
    CHECK_THROWS_AS(align_common_dates({a, b}), InsufficientOverlap);
}

TEST_CASE("align_common_dates needs two series") {
    const auto a = make_curve(test::uniform_segment(50, 5), "A");
    CHECK_THROWS_AS(align_common_dates({a}), LengthMismatch);
}

TEST_CASE("align_common_dates skips missing values and matches a set oracle") {
    auto a = make_curve(test::uniform_segment(90, 6), "A", 0);
    auto b = make_curve(test::uniform_segment(80, 7), "B", 10);
    auto c = make_curve(test::uniform_segment(70, 8), "C", 20);
    a.sfr[40] = std::nullopt;  // drops one date from the intersection
    const auto aligned = align_common_dates({a, b, c});

    std::set<Date> sa, sb, sc, expect;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.sfr[i]) sa.insert(a.dates[i]);
    for (std::size_t i = 0; i < b.size(); ++i) sb.insert(b.dates[i]);
    for (std::size_t i = 0; i < c.size(); ++i) sc.insert(c.dates[i]);
    for (const Date d : sa)
        if (sb.count(d) && sc.count(d)) expect.insert(d);
    CHECK(std::set<Date>(aligned.dates.begin(), aligned.dates.end()) == expect);
    CHECK(std::is_sorted(aligned.dates.begin(), aligned.dates.end()));
}

TEST_CASE("pearson closed cases") {
    const auto x = test::uniform_segment(50, 9);
    SECTION("self-correlation") { CHECK_THAT(pearson(x, x), WithinAbs(1.0, 1e-12)); }
    SECTION("antisymmetry") {
        auto neg = x;
        for (double& v : neg) v = -v;
        CHECK_THAT(pearson(x, neg), WithinAbs(-1.0, 1e-12));
    }
    SECTION("constant input") {
        const std::vector<double> c(50, 3.25);
        CHECK_THROWS_AS(pearson(x, c), ZeroVariance);
        CHECK_THROWS_AS(pearson(c, x), ZeroVariance);
    }
    SECTION("length checks") {
        const std::vector<double> y(49, 0.0);
        CHECK_THROWS_AS(pearson(x, y), LengthMismatch);
        const std::vector<double> one{1.0}, two{2.0};
        CHECK_THROWS_AS(pearson(one, two), LengthMismatch);
    }
}

TEST_CASE("pearson symmetry, affine invariance, negation") {
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = test::gaussian_segment(80, rng());
        const auto y = test::gaussian_segment(80, rng());
        const double r = pearson(x, y);
        CHECK(r >= -1.0 - 1e-12);
        CHECK(r <= 1.0 + 1e-12);
        CHECK_THAT(pearson(y, x), WithinAbs(r, 1e-12));

        auto mapped = x;
        for (double& v : mapped) v = 2.5 * v + 7.0;
        CHECK_THAT(pearson(mapped, y), WithinAbs(r, 1e-9));

        auto neg = x;
        for (double& v : neg) v = -v;
        CHECK_THAT(pearson(neg, y), WithinAbs(-r, 1e-12));
    }
}

TEST_CASE("correlation matrix of identical curves is all ones") {
    const auto base = test::uniform_segment(100, 10);
    std::vector<RiskSeries> series;
    for (int k = 0; k < 4; ++k) series.push_back(make_curve(base, "M" + std::to_string(k)));
    const auto matrix = correlation_matrix(series);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK_THAT(matrix.r[i][j], WithinAbs(1.0, 1e-12));
            CHECK(matrix.support[i][j] == 100);
        }
    }
}

TEST_CASE("correlation matrix is symmetric with unit diagonal") {
    std::vector<RiskSeries> series;
    for (int k = 0; k < 5; ++k)
        series.push_back(make_curve(test::gaussian_segment(120, 40 + std::uint64_t(k)),
                                    "M" + std::to_string(k)));
    const auto matrix = correlation_matrix(series);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(matrix.r[i][i] == 1.0);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(matrix.r[i][j] == matrix.r[j][i]);
            CHECK(std::abs(matrix.r[i][j]) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("pairwise mode equals common mode on fully overlapping data") {
    std::vector<RiskSeries> series;
    for (int k = 0; k < 3; ++k)
        series.push_back(make_curve(test::gaussian_segment(90, 60 + std::uint64_t(k)),
                                    "M" + std::to_string(k)));
    const auto common = correlation_matrix(series, SupportMode::Common);
    const auto pairwise = correlation_matrix(series, SupportMode::Pairwise);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(common.r[i][j] == pairwise.r[i][j]);
}

TEST_CASE("pairwise mode rejects thin overlaps") {
    const auto a = make_curve(test::uniform_segment(40, 11), "A", 0);
    const auto b = make_curve(test::uniform_segment(40, 12), "B", 25);  // 15 shared dates
    CHECK_THROWS_AS(correlation_matrix({a, b}, SupportMode::Pairwise), InsufficientOverlap);
}

TEST_CASE("threshold_network edge rule") {
    std::mt19937_64 rng(77);
    const auto matrix = random_matrix(6, rng);
    SECTION("minus one links everything") {
        const auto net = threshold_network(matrix, -1.0);
        CHECK(net.edges.size() == 15);
        CHECK(net.nodes == matrix.markets);
    }
    SECTION("tau outside [-1,1] is rejected") {
        CHECK_THROWS_AS(threshold_network(matrix, 1.5), BadThreshold);
        CHECK_THROWS_AS(threshold_network(matrix, -1.0001), BadThreshold);
    }
    SECTION("tau = 1 with generic coefficients gives no edges, all nodes stay") {
        const auto net = threshold_network(matrix, 1.0);
        CHECK(net.edges.empty());
        CHECK(net.nodes.size() == 6);
    }
    SECTION("every edge meets the threshold") {
        const auto net = threshold_network(matrix, 0.3);
        for (const NetworkEdge& e : net.edges) CHECK(e.r >= 0.3);
    }
}

TEST_CASE("threshold nesting over random matrices") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const auto matrix = random_matrix(2 + rng() % 8, rng);
        const auto tight = edge_set(threshold_network(matrix, 0.9));
        const auto loose = edge_set(threshold_network(matrix, 0.8));
        CHECK(std::includes(loose.begin(), loose.end(), tight.begin(), tight.end()));
    }
}

TEST_CASE("network exports") {
    CorrelationMatrix matrix;
    matrix.markets = {"USA", "BRA", "JPN"};
    matrix.r = {{1.0, 0.95, 0.1}, {0.95, 1.0, -0.4}, {0.1, -0.4, 1.0}};
    matrix.support.assign(3, std::vector<std::int64_t>(3, 200));
    const auto net = threshold_network(matrix, 0.8);
    REQUIRE(net.edges.size() == 1);

    SECTION("dot lists every node and the edge") {
        std::ostringstream out;
        write_network_dot(net, out);
        const std::string dot = out.str();
        CHECK(dot.find("\"USA\";") != std::string::npos);
        CHECK(dot.find("\"JPN\";") != std::string::npos);
        CHECK(dot.find("\"USA\" -- \"BRA\" [r=0.95]") != std::string::npos);
    }
    SECTION("json round-trips through a parser") {
        std::ostringstream out;
        write_network_json(net, out);
        const auto j = nlohmann::json::parse(out.str());
        CHECK(j["threshold"].get<double>() == 0.8);
        CHECK(j["nodes"].size() == 3);
        REQUIRE(j["edges"].size() == 1);
        CHECK(j["edges"][0]["a"] == "USA");
        CHECK(j["edges"][0]["b"] == "BRA");
        CHECK(j["edges"][0]["r"].get<double>() == 0.95);
    }
    SECTION("edge csv") {
        std::ostringstream out;
        write_network_edge_csv(net, out);
        CHECK(out.str() == "a,b,r\nUSA,BRA,0.95\n");
    }
    SECTION("matrix csv round-trips") {
        std::ostringstream out;
        write_matrix_csv(matrix, out);
        std::istringstream in(out.str());
        const auto back = parse_matrix_csv(in);
        CHECK(back.markets == matrix.markets);
        CHECK(back.r == matrix.r);
    }
}
