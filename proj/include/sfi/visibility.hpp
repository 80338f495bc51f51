#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sfi/errors.hpp"

namespace sfi {

enum class WeightMode { Signed, Absolute };

struct VgEdge {
    std::int32_t i;  // earlier time index
    std::int32_t j;  // later time index, j > i
    double w;        // amplitude difference between the endpoints
    bool operator==(const VgEdge&) const = default;
};

/// Visibility graph of a series segment. One node per time index; an edge
/// joins two indices whenever the straight line between their points stays
/// strictly above every intermediate point. Edges are sorted by (i, j) and
/// always include every consecutive pair, so the graph is connected.
struct WeightedVisibilityGraph {
    std::int32_t n = 0;
    std::vector<VgEdge> edges;

    bool operator==(const WeightedVisibilityGraph&) const = default;
};

/// Visibility test between indices a < b of a segment whose time coordinates
/// are the integer indices themselves: true iff every intermediate point c
/// satisfies y_c < y_b + (y_a - y_b) * (b - c) / (b - a). Collinear points
/// block (strict inequality). Adjacent indices are always visible.
inline bool visible(std::span<const double> segment, std::size_t a, std::size_t b) {
    if (a >= segment.size() || b >= segment.size())
        throw IndexOutOfRange("index " + std::to_string(std::max(a, b)) +
                              " out of range for segment of length " +
                              std::to_string(segment.size()));
    if (a >= b)
        throw NonIncreasingIndices("need a < b, got a=" + std::to_string(a) +
                                   ", b=" + std::to_string(b));
    const double ya = segment[a];
    const double yb = segment[b];
    const double span = double(b) - double(a);
    for (std::size_t c = a + 1; c < b; ++c) {
        const double line = yb + (ya - yb) * (double(b) - double(c)) / span;
        if (!(segment[c] < line)) return false;
    }
    return true;
}

namespace detail {

inline double edge_weight(std::span<const double> segment, std::size_t i, std::size_t j,
                          WeightMode mode) {
    const double w = segment[j] - segment[i];
    return mode == WeightMode::Signed ? w : std::abs(w);
}

inline void sort_edges(std::vector<VgEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const VgEdge& a, const VgEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
}

}  // namespace detail

/// Reference construction: checks every index pair against `visible`.
/// Quadratic in the segment length; exists as the oracle for the fast path.
inline WeightedVisibilityGraph build_vg_naive(std::span<const double> segment,
                                              WeightMode mode = WeightMode::Signed) {
    if (segment.size() < 2) throw SegmentTooShort(segment.size());
    WeightedVisibilityGraph g;
    g.n = std::int32_t(segment.size());
    for (std::size_t i = 0; i + 1 < segment.size(); ++i) {
        for (std::size_t j = i + 1; j < segment.size(); ++j) {
            if (visible(segment, i, j))
                g.edges.push_back({std::int32_t(i), std::int32_t(j),
                                   detail::edge_weight(segment, i, j, mode)});
        }
    }
    return g;
}

/// Fast construction, extensionally equal to build_vg_naive.
///
/// Divide and conquer on the segment maximum: no edge can span the maximum
/// of an interval (the line between any two straddling points passes at or
/// below the maximum), so the edge set splits into edges incident to the
/// maximum plus the edge sets of the two flanking sub-intervals. The edges
/// incident to the maximum at index k come from one linear sweep per side:
/// walking outward from k, a point is visible from k exactly when its slope
/// toward k strictly exceeds every slope seen so far. Average O(n log n)
/// node visits on series whose maximum falls near a uniformly random
/// position; edges accumulate into a single vector, sorted once at the end.
inline WeightedVisibilityGraph build_vg_fast(std::span<const double> segment,
                                             WeightMode mode = WeightMode::Signed) {
    const std::size_t n = segment.size();
    if (n < 2) throw SegmentTooShort(n);
    WeightedVisibilityGraph g;
    g.n = std::int32_t(n);
    g.edges.reserve(2 * n);

    struct Range {
        std::int64_t lo, hi;  // inclusive, hi > lo
    };
    std::vector<Range> work;
    work.push_back({0, std::int64_t(n) - 1});
    while (!work.empty()) {
        const auto [lo, hi] = work.back();
        work.pop_back();

        std::int64_t k = lo;
        for (std::int64_t t = lo + 1; t <= hi; ++t) {
            if (segment[std::size_t(t)] > segment[std::size_t(k)]) k = t;
        }
        const double yk = segment[std::size_t(k)];

        double best = -std::numeric_limits<double>::infinity();
        for (std::int64_t c = k - 1; c >= lo; --c) {
            const double slope = (segment[std::size_t(c)] - yk) / double(k - c);
            if (slope > best) {
                g.edges.push_back({std::int32_t(c), std::int32_t(k),
                                   detail::edge_weight(segment, std::size_t(c), std::size_t(k), mode)});
                best = slope;
            }
        }
        best = -std::numeric_limits<double>::infinity();
        for (std::int64_t c = k + 1; c <= hi; ++c) {
            const double slope = (segment[std::size_t(c)] - yk) / double(c - k);
            if (slope > best) {
                g.edges.push_back({std::int32_t(k), std::int32_t(c),
                                   detail::edge_weight(segment, std::size_t(k), std::size_t(c), mode)});
                best = slope;
            }
        }
        if (k - lo >= 2) work.push_back({lo, k - 1});
        if (hi - k >= 2) work.push_back({k + 1, hi});
    }
    detail::sort_edges(g.edges);
    return g;
}

}  // namespace sfi
