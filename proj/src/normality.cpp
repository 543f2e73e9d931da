#include "rmtcorr/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmtcorr/errors.hpp"
#include "rmtcorr/rng.hpp"
#include "rmtcorr/stats.hpp"

namespace rmtcorr {

double jarque_bera_statistic(std::size_t n, double skewness, double kurtosis) {
    const double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

JarqueBeraResult jarque_bera(std::span<const double> sample) {
    if (sample.size() < 4) throw InputError("jarque_bera: need at least 4 values");
    const double s = stats::skewness(sample);
    const double k = stats::kurtosis(sample);
    if (std::isnan(s) || std::isnan(k)) {
        throw InputError("jarque_bera: sample has zero variance");
    }
    JarqueBeraResult out;
    out.statistic = jarque_bera_statistic(sample.size(), s, k);
    out.critical_5pct = stats::chi2_df2_critical(0.05);
    out.reject_5pct = out.statistic > out.critical_5pct;
    return out;
}

double lilliefors_statistic(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 2) throw InputError("lilliefors_statistic: need at least 2 values");
    const double m = stats::mean(sample);
    const double s = stats::sample_stddev(sample);
    if (s == 0.0) throw InputError("lilliefors_statistic: sample has zero variance");

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    double d_plus = 0.0;
    double d_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = stats::normal_cdf((x[i] - m) / s);
        d_plus = std::max(d_plus, static_cast<double>(i + 1) / static_cast<double>(n) - f);
        d_minus = std::max(d_minus, f - static_cast<double>(i) / static_cast<double>(n));
    }
    return std::max(d_plus, d_minus);
}

double LillieforsTable::critical_5pct(std::size_t n) const {
    if (n < 5) throw InputError("lilliefors: need at least 5 values");
    const auto cached = cache_.find(n);
    if (cached != cache_.end()) return cached->second;

    // Null distribution of the statistic for this sample size. Replicate r
    // draws from stream kSeed ^ mix64(n) + r, independent of call order.
    std::vector<double> stats_null(kReplicates);
    std::vector<double> sample(n);
    for (std::size_t r = 0; r < kReplicates; ++r) {
        const CounterRng rng((kSeed ^ mix64(static_cast<std::uint64_t>(n))) + r);
        for (std::size_t i = 0; i < n; ++i) sample[i] = rng.normal(i);
        stats_null[r] = lilliefors_statistic(sample);
    }
    std::sort(stats_null.begin(), stats_null.end());
    const double critical = stats_null[kReplicates * 95 / 100 - 1];
    cache_.emplace(n, critical);
    return critical;
}

LillieforsResult lilliefors(std::span<const double> sample, const LillieforsTable& table) {
    if (sample.size() < 5) throw InputError("lilliefors: need at least 5 values");
    LillieforsResult out;
    out.statistic = lilliefors_statistic(sample);
    out.critical_5pct = table.critical_5pct(sample.size());
    out.reject_5pct = out.statistic > out.critical_5pct;
    return out;
}

LillieforsResult lilliefors(std::span<const double> sample) {
    const LillieforsTable table;
    return lilliefors(sample, table);
}

NormalityReport normality_report(std::span<const double> sample, const LillieforsTable& table) {
    NormalityReport out;
    out.n = sample.size();
    out.skewness = stats::skewness(sample);
    out.kurtosis = stats::kurtosis(sample);
    out.jb = jarque_bera(sample);
    out.lilliefors = lilliefors(sample, table);
    return out;
}

std::pair<RollingSeries, RollingSeries> rolling_moments(const Grid<double>& panel,
                                                        const std::vector<Date>& dates,
                                                        const std::vector<std::string>& symbols,
                                                        std::size_t window_length,
                                                        CorrelationMethod method) {
    if (dates.size() != panel.rows()) throw InputError("rolling_moments: date count mismatch");
    if (window_length < 3) throw InputError("rolling_moments: window must be at least 3");
    if (window_length > panel.rows()) {
        throw InputError("rolling_moments: window of " + std::to_string(window_length) +
                         " rows exceeds panel of " + std::to_string(panel.rows()) + " rows");
    }
    RollingSeries skew;
    skew.kind = SeriesKind::Skewness;
    skew.window_length = window_length;
    RollingSeries kurt;
    kurt.kind = SeriesKind::Kurtosis;
    kurt.window_length = window_length;

    const std::size_t count = panel.rows() - window_length + 1;
    for (std::size_t start = 0; start < count; ++start) {
        const RowRange w{start, start + window_length};
        const CorrelationMatrix m = correlation(panel, symbols, method, w);
        const OffdiagStats stats = offdiag_stats(m);
        // Degenerate coefficient samples surface as NaN gaps.
        skew.dates.push_back(dates[w.end - 1]);
        skew.values.push_back(stats.skewness);
        kurt.dates.push_back(dates[w.end - 1]);
        kurt.values.push_back(stats.kurtosis);
    }
    return {std::move(skew), std::move(kurt)};
}

}  // namespace rmtcorr
