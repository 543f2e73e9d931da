#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmtcorr::stats {

[[nodiscard]] double mean(std::span<const double> x);

// Sample variance and standard deviation use the n-1 divisor throughout the
// library; every windowed statistic follows the same convention.
[[nodiscard]] double sample_variance(std::span<const double> x);
[[nodiscard]] double sample_stddev(std::span<const double> x);

// Central moment of order p with divisor n.
[[nodiscard]] double central_moment(std::span<const double> x, int p);

// Skewness m3 / m2^(3/2) and kurtosis m4 / m2^2 (not excess), both built
// from divisor-n central moments. Zero second moment yields NaN.
[[nodiscard]] double skewness(std::span<const double> x);
[[nodiscard]] double kurtosis(std::span<const double> x);

// Pearson product-moment correlation; requires both spans same length >= 2
// and nonzero variance on both sides.
[[nodiscard]] double pearson(std::span<const double> x, std::span<const double> y);

// Sample covariance (divisor n-1).
[[nodiscard]] double sample_covariance(std::span<const double> x, std::span<const double> y);

// Fractional ranks, 1-based, ties resolved as the average of the tied span.
[[nodiscard]] std::vector<double> average_ranks(std::span<const double> x);

// Standard normal CDF via erfc; absolute error well below 1e-10.
[[nodiscard]] double normal_cdf(double x);

// Inverse standard normal CDF, Wichura's PPND16 rational approximation,
// |error| < 1e-15 over (0, 1).
[[nodiscard]] double inverse_normal_cdf(double p);

// chi-square(2) upper critical value: the df=2 CDF is 1 - exp(-x/2), so the
// inverse is closed-form.
[[nodiscard]] double chi2_df2_critical(double alpha);

}  // namespace rmtcorr::stats
