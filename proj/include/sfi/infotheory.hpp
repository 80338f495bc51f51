#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sfi/errors.hpp"
#include "sfi/visibility.hpp"

namespace sfi {

/// Fisher information below this value counts as degenerate; the SF ratio
/// is refused rather than fabricated.
inline constexpr double kFisherEpsilon = 1e-12;

/// Normalized histogram of a graph's edge weights: `bins` equal-width bins
/// spanning [lo, hi] = the weight range of that graph, top bin right-closed.
/// Probabilities sum to 1; a graph whose weights are all equal puts the
/// whole mass in bin 0.
struct WeightPDF {
    int bins = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> p;

    bool operator==(const WeightPDF&) const = default;
};

/// Normalized Shannon entropy and discrete Fisher information of one weight
/// distribution, plus their ratio.
struct SFPoint {
    double shannon = 0.0;  // in [0, 1]
    double fisher = 0.0;   // in [0, 1]
    double sf = 0.0;       // shannon / fisher
    bool operator==(const SFPoint&) const = default;
};

inline WeightPDF weight_pdf(const WeightedVisibilityGraph& graph, int bins = 50) {
    if (bins < 2) throw TooFewBins(bins);
    if (graph.edges.empty()) throw NoEdges();

    WeightPDF pdf;
    pdf.bins = bins;
    pdf.lo = pdf.hi = graph.edges.front().w;
    for (const VgEdge& e : graph.edges) {
        pdf.lo = std::min(pdf.lo, e.w);
        pdf.hi = std::max(pdf.hi, e.w);
    }
    std::vector<std::size_t> counts(std::size_t(bins), 0);
    if (pdf.lo == pdf.hi) {
        counts[0] = graph.edges.size();
    } else {
        const double range = pdf.hi - pdf.lo;
        for (const VgEdge& e : graph.edges) {
            auto idx = int((e.w - pdf.lo) / range * bins);
            if (idx >= bins) idx = bins - 1;  // hi itself lands in the last bin
            ++counts[std::size_t(idx)];
        }
    }
    pdf.p.resize(std::size_t(bins));
    const double total = double(graph.edges.size());
    for (std::size_t i = 0; i < counts.size(); ++i) pdf.p[i] = double(counts[i]) / total;
    return pdf;
}

/// S = -sum p_i ln p_i / ln N, with 0 ln 0 = 0. Zero for a single active
/// bin, one for the uniform distribution.
inline double shannon_norm(const WeightPDF& pdf) {
    double s = 0.0;
    for (const double p : pdf.p) {
        if (p > 0.0) s -= p * std::log(p);
    }
    return s / std::log(double(pdf.bins));
}

/// Discrete Fisher information F = F0 * sum_{i} (sqrt(p_{i+1}) - sqrt(p_i))^2.
/// F0 is 1 when a boundary bin carries all the mass and 1/2 otherwise, which
/// pins F to 1 at any delta distribution and 0 at the uniform one.
inline double fisher(const WeightPDF& pdf) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pdf.p.size(); ++i) {
        const double step = std::sqrt(pdf.p[i + 1]) - std::sqrt(pdf.p[i]);
        acc += step * step;
    }
    const double f0 = (pdf.p.front() == 1.0 || pdf.p.back() == 1.0) ? 1.0 : 0.5;
    return f0 * acc;
}

/// The instability quantifier: Shannon entropy divided by Fisher
/// information. Throws DegenerateFisher when F < epsilon (e.g. an exactly
/// uniform distribution), so callers report the window as missing instead
/// of inventing a value.
inline SFPoint sf_index(const WeightPDF& pdf) {
    SFPoint out;
    out.shannon = shannon_norm(pdf);
    out.fisher = fisher(pdf);
    if (out.fisher < kFisherEpsilon) throw DegenerateFisher();
    out.sf = out.shannon / out.fisher;
    return out;
}

}  // namespace sfi
