#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmtcorr/calendar.hpp"
#include "rmtcorr/grid.hpp"
#include "rmtcorr/ingest.hpp"

namespace rmtcorr {

// Daily log-return panel. Row t holds ln(P[t+1]/P[t]) and is labelled with
// the later date. fill_spanning marks returns whose terminal close was a
// filled value (those returns are 0 across a filled gap by construction).
struct ReturnPanel {
    std::vector<Date> dates;
    std::vector<MarketMeta> markets;
    Grid<double> raw;
    Grid<double> standardized;
    Grid<std::uint8_t> fill_spanning;
    std::vector<std::size_t> zero_variance_columns;
};

[[nodiscard]] ReturnPanel log_returns(const AlignedPanel& panel);

// Centers and scales each raw column to mean 0, sample std 1. Zero-variance
// columns are left as zeros and reported in zero_variance_columns; callers
// exclude them from correlation work. When exclude_fill_spanning is set the
// column mean/std are estimated without fill-spanning rows (all rows are
// still transformed).
void standardize(ReturnPanel& panel, bool exclude_fill_spanning = false);

// Affine map of a standardized series onto a display scale.
[[nodiscard]] std::vector<double> renormalize(std::span<const double> values,
                                              double target_mean,
                                              double target_std);

struct DensityBin {
    double center = 0.0;
    double value = 0.0;
};

// ln(1 + density) histogram of a sample; bins are anchored at zero with the
// given width and empty bins are omitted.
[[nodiscard]] std::vector<DensityBin> log_density(std::span<const double> values,
                                                  double bin_width = 0.004);

struct CrashEvent {
    std::string symbol;
    Date date;
    double log_return = 0.0;
};

struct MarketCrashes {
    std::string symbol;
    std::vector<CrashEvent> events;  // ascending by return, most severe first
};

struct CrashReport {
    std::vector<MarketCrashes> per_market;
    std::map<int, int> yearly_counts;  // events per calendar year, multiplicity kept
};

// The k most negative raw log-returns of every market, with a per-year tally
// across all markets.
[[nodiscard]] CrashReport scan_crashes(const ReturnPanel& panel, int k = 10);

}  // namespace rmtcorr
