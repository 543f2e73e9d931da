#include "rmtcorr/marketmode.hpp"

#include <cmath>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/stats.hpp"

namespace rmtcorr {

MarketModeSeries build_market_mode(const Grid<double>& standardized,
                                   const std::vector<Date>& dates,
                                   const SpectralDecomposition& decomp) {
    if (dates.size() != standardized.rows()) {
        throw InputError("build_market_mode: date count mismatch");
    }
    const std::size_t n = standardized.cols();
    if (decomp.eigenvalues.size() != n) {
        throw InputError("build_market_mode: decomposition is " +
                         std::to_string(decomp.eigenvalues.size()) + "-dimensional but panel has " +
                         std::to_string(n) + " columns");
    }
    const std::size_t top = n - 1;  // eigenvalues ascend
    MarketModeSeries out;
    out.dates = dates;
    out.values.resize(standardized.rows());
    out.volatility.resize(standardized.rows());
    for (std::size_t t = 0; t < standardized.rows(); ++t) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += decomp.eigenvectors(i, top) * standardized(t, i);
        out.values[t] = m;
        out.volatility[t] = std::fabs(m);
    }
    return out;
}

RollingSeries rolling_volatility(const MarketModeSeries& mode, std::size_t window_length) {
    if (window_length < 1) throw InputError("rolling_volatility: window must be at least 1");
    if (window_length > mode.values.size()) {
        throw InputError("rolling_volatility: window of " + std::to_string(window_length) +
                         " exceeds series of " + std::to_string(mode.values.size()));
    }
    RollingSeries out;
    out.kind = SeriesKind::MeanVolatility;
    out.window_length = window_length;
    const std::size_t count = mode.values.size() - window_length + 1;
    double acc = 0.0;
    for (std::size_t t = 0; t < window_length; ++t) acc += mode.volatility[t];
    for (std::size_t start = 0; start < count; ++start) {
        out.dates.push_back(mode.dates[start + window_length - 1]);
        out.values.push_back(acc / static_cast<double>(window_length));
        if (start + window_length < mode.values.size()) {
            acc += mode.volatility[start + window_length] - mode.volatility[start];
        }
    }
    return out;
}

RollingSeries rolling_covariance(const RollingSeries& a,
                                 const RollingSeries& b,
                                 std::size_t window_length) {
    if (a.values.size() != b.values.size()) {
        throw InputError("rolling_covariance: series lengths differ");
    }
    if (a.dates != b.dates) throw InputError("rolling_covariance: series dates differ");
    if (window_length < 2) throw InputError("rolling_covariance: window must be at least 2");
    if (window_length > a.values.size()) {
        throw InputError("rolling_covariance: window of " + std::to_string(window_length) +
                         " exceeds series of " + std::to_string(a.values.size()));
    }
    RollingSeries out;
    out.kind = SeriesKind::Covariance;
    out.window_length = window_length;
    const std::size_t count = a.values.size() - window_length + 1;
    for (std::size_t start = 0; start < count; ++start) {
        const std::span<const double> xs(a.values.data() + start, window_length);
        const std::span<const double> ys(b.values.data() + start, window_length);
        out.dates.push_back(a.dates[start + window_length - 1]);
        out.values.push_back(stats::sample_covariance(xs, ys));
    }
    return out;
}

double comovement_correlation(std::span<const double> volatility,
                              std::span<const double> mean_correlation) {
    if (volatility.size() != mean_correlation.size()) {
        throw InputError("comovement_correlation: series lengths differ");
    }
    if (volatility.size() < 3) {
        throw InputError("comovement_correlation: need at least 3 paired values");
    }
    return stats::pearson(volatility, mean_correlation);
}

}  // namespace rmtcorr
