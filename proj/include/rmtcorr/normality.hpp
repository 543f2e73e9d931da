#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "rmtcorr/corrmat.hpp"
#include "rmtcorr/grid.hpp"

namespace rmtcorr {

struct JarqueBeraResult {
    double statistic = 0.0;
    double critical_5pct = 0.0;  // chi-square(2), 5%
    bool reject_5pct = false;
};

// JB = n/6 * (s^2 + (k-3)^2 / 4) with s, k from divisor-n central moments.
[[nodiscard]] double jarque_bera_statistic(std::size_t n, double skewness, double kurtosis);
[[nodiscard]] JarqueBeraResult jarque_bera(std::span<const double> sample);

// Kolmogorov-Smirnov distance between the sample and a normal fitted with
// the sample mean and sample (n-1) std; both one-sided step discrepancies.
[[nodiscard]] double lilliefors_statistic(std::span<const double> sample);

// 5% critical values calibrated by Monte Carlo: for each sample size,
// 10,000 standard-normal replicates from a fixed seed, 95th percentile of
// the null statistic (the 9,500th of 10,000 sorted values). Values are
// cached per size; a fresh table regenerates them bit-for-bit.
class LillieforsTable {
public:
    static constexpr std::uint64_t kSeed = 0x4c696c6c69653035ull;
    static constexpr std::size_t kReplicates = 10000;

    [[nodiscard]] double critical_5pct(std::size_t n) const;

private:
    mutable std::map<std::size_t, double> cache_;
};

struct LillieforsResult {
    double statistic = 0.0;
    double critical_5pct = 0.0;
    bool reject_5pct = false;
};

[[nodiscard]] LillieforsResult lilliefors(std::span<const double> sample,
                                          const LillieforsTable& table);
[[nodiscard]] LillieforsResult lilliefors(std::span<const double> sample);

struct NormalityReport {
    std::size_t n = 0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    JarqueBeraResult jb;
    LillieforsResult lilliefors;
};

[[nodiscard]] NormalityReport normality_report(std::span<const double> sample,
                                               const LillieforsTable& table);

// Rolling skewness and kurtosis of the off-diagonal coefficients of
// windowed correlation matrices. Windows with a degenerate coefficient
// sample carry NaN.
[[nodiscard]] std::pair<RollingSeries, RollingSeries> rolling_moments(
    const Grid<double>& panel,
    const std::vector<Date>& dates,
    const std::vector<std::string>& symbols,
    std::size_t window_length,
    CorrelationMethod method = CorrelationMethod::Pearson);

}  // namespace rmtcorr
