#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rmtcorr/calendar.hpp"
#include "rmtcorr/grid.hpp"

namespace rmtcorr {

enum class CorrelationMethod { Pearson, Spearman };

[[nodiscard]] std::string_view method_name(CorrelationMethod m);

// Half-open row window [begin, end) into a return panel.
struct RowRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    [[nodiscard]] std::size_t length() const { return end - begin; }
};

struct CorrelationMatrix {
    CorrelationMethod method = CorrelationMethod::Pearson;
    std::size_t n = 0;
    std::vector<std::string> symbols;          // labels of retained columns
    std::vector<std::size_t> kept_columns;     // panel indices of retained columns
    std::vector<std::size_t> excluded_columns; // zero variance inside the window
    std::vector<double> entries;               // n*n, symmetric, unit diagonal
    std::optional<RowRange> window;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    // Off-diagonal coefficients c_ij with i < j, row-major order.
    [[nodiscard]] std::vector<double> offdiag() const;
};

// Pearson correlation of the panel columns over an optional row window
// (whole panel when absent). Windows shorter than 3 rows are rejected;
// zero-variance columns are dropped from the matrix and reported.
[[nodiscard]] CorrelationMatrix pearson(const Grid<double>& panel,
                                        const std::vector<std::string>& symbols,
                                        std::optional<RowRange> window = std::nullopt);

// Same contract, on fractional ranks per column (ties averaged).
[[nodiscard]] CorrelationMatrix spearman(const Grid<double>& panel,
                                         const std::vector<std::string>& symbols,
                                         std::optional<RowRange> window = std::nullopt);

[[nodiscard]] CorrelationMatrix correlation(const Grid<double>& panel,
                                            const std::vector<std::string>& symbols,
                                            CorrelationMethod method,
                                            std::optional<RowRange> window = std::nullopt);

struct OffdiagStats {
    double mean = 0.0;
    double stddev = 0.0;    // sample, divisor n-1
    double skewness = 0.0;  // divisor-n central moments; NaN when degenerate
    double kurtosis = 0.0;
    std::size_t count = 0;
};

[[nodiscard]] OffdiagStats offdiag_stats(const CorrelationMatrix& m);

enum class SeriesKind {
    MeanCorrelation,
    Volatility,
    MeanVolatility,
    Covariance,
    Skewness,
    Kurtosis,
};

// End-labelled rolling series: values[i] summarizes the window of
// `window_length` rows ending at dates[i].
struct RollingSeries {
    SeriesKind kind = SeriesKind::MeanCorrelation;
    std::size_t window_length = 0;
    std::vector<Date> dates;
    std::vector<double> values;
};

// Mean off-diagonal coefficient over every window of window_length rows.
[[nodiscard]] RollingSeries rolling_mean_correlation(const Grid<double>& panel,
                                                     const std::vector<Date>& dates,
                                                     const std::vector<std::string>& symbols,
                                                     std::size_t window_length,
                                                     CorrelationMethod method = CorrelationMethod::Pearson);

enum class Period { BiMonthly, FullSpan };

struct HistogramBin {
    double center = 0.0;
    double density = 0.0;
    std::size_t count = 0;
};

struct PeriodDistribution {
    std::string label;  // "YYYY-MM/YYYY-MM" or "full"
    Date first_date;
    Date last_date;
    std::size_t rows = 0;
    double bin_width = 0.0;
    std::vector<HistogramBin> bins;  // normalized: sum(density * width) = 1
};

// Coefficient distributions per calendar period. BiMonthly emits one
// histogram per two-month block with at least 3 rows (skipped blocks are
// reported in `skipped`) plus the full-span histogram last.
[[nodiscard]] std::vector<PeriodDistribution> periodized_coefficient_distribution(
    const Grid<double>& panel,
    const std::vector<Date>& dates,
    const std::vector<std::string>& symbols,
    Period period,
    double bin_width = 0.1,
    CorrelationMethod method = CorrelationMethod::Pearson,
    std::vector<std::string>* skipped = nullptr);

}  // namespace rmtcorr
