#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfi {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- ingest --------------------------------------------------------------

/// File could not be opened or read.
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

/// A CSV line that does not parse; carries the 1-based line number.
struct MalformedRow : Error {
    MalformedRow(std::size_t line_number, const std::string& detail)
        : Error("line " + std::to_string(line_number) + ": " + detail),
          line(line_number) {}
    std::size_t line;
};

/// The same calendar date appears twice in one price file.
struct DuplicateDate : Error {
    explicit DuplicateDate(const std::string& date)
        : Error("duplicate date: " + date), date(date) {}
    std::string date;
};

/// A closing price that is zero, negative, or not finite.
struct NonPositivePrice : Error {
    NonPositivePrice(std::size_t line_number, const std::string& detail)
        : Error("line " + std::to_string(line_number) + ": " + detail),
          line(line_number) {}
    std::size_t line;
};

/// A price row dated on a Saturday or Sunday.
struct WeekendDate : Error {
    explicit WeekendDate(const std::string& date)
        : Error("weekend date: " + date), date(date) {}
    std::string date;
};

struct EmptySeries : Error {
    EmptySeries() : Error("series is empty") {}
};

struct SeriesTooShort : Error {
    SeriesTooShort(std::size_t needed, std::size_t got)
        : Error("series too short: need " + std::to_string(needed) +
                " points, got " + std::to_string(got)) {}
};

// --- visibility ----------------------------------------------------------

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct NonIncreasingIndices : Error {
    explicit NonIncreasingIndices(const std::string& what) : Error(what) {}
};

struct SegmentTooShort : Error {
    explicit SegmentTooShort(std::size_t got)
        : Error("segment too short: need at least 2 points, got " +
                std::to_string(got)) {}
};

// --- infotheory ----------------------------------------------------------

struct NoEdges : Error {
    NoEdges() : Error("graph has no edges") {}
};

struct TooFewBins : Error {
    explicit TooFewBins(int bins)
        : Error("need at least 2 bins, got " + std::to_string(bins)) {}
};

/// Fisher information below epsilon; the window cannot be scored.
struct DegenerateFisher : Error {
    DegenerateFisher() : Error("Fisher information is degenerate (below epsilon)") {}
};

// --- windows -------------------------------------------------------------

struct BadWindowParams : Error {
    explicit BadWindowParams(const std::string& what) : Error(what) {}
};

/// Whole-series SF is undefined or zero; no risk ratio can be formed.
struct DegenerateGlobal : Error {
    explicit DegenerateGlobal(const std::string& what) : Error(what) {}
};

// --- netcorr -------------------------------------------------------------

struct InsufficientOverlap : Error {
    explicit InsufficientOverlap(const std::string& what) : Error(what) {}
};

struct ZeroVariance : Error {
    explicit ZeroVariance(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct BadThreshold : Error {
    explicit BadThreshold(double tau)
        : Error("threshold must lie in [-1, 1], got " + std::to_string(tau)) {}
};

}  // namespace sfi
