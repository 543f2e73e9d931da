#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmtcorr/calendar.hpp"
#include "rmtcorr/corrmat.hpp"
#include "rmtcorr/grid.hpp"
#include "rmtcorr/spectral.hpp"

namespace rmtcorr {

// Projection of the standardized return panel onto the leading eigenvector:
// m_t = sum_i e_max[i] * x_ti. Daily volatility is |m_t|.
struct MarketModeSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    std::vector<double> volatility;
};

[[nodiscard]] MarketModeSeries build_market_mode(const Grid<double>& standardized,
                                                 const std::vector<Date>& dates,
                                                 const SpectralDecomposition& decomp);

// Rolling mean of |m_t| over end-labelled windows.
[[nodiscard]] RollingSeries rolling_volatility(const MarketModeSeries& mode,
                                               std::size_t window_length);

// Rolling sample covariance of two date-aligned series.
[[nodiscard]] RollingSeries rolling_covariance(const RollingSeries& a,
                                               const RollingSeries& b,
                                               std::size_t window_length = 30);

// Pearson correlation between the volatility and mean-correlation series
// over their full common span.
[[nodiscard]] double comovement_correlation(std::span<const double> volatility,
                                            std::span<const double> mean_correlation);

}  // namespace rmtcorr
